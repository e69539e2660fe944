#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qb/scalar.hpp"

namespace qb {

// A word in the free monoid on the generators; letter = generator index.
using Word = std::basic_string<unsigned char>;

class Algebra;

// Normal-form linear combination of words with nonzero coefficients.
class Element {
public:
  Element() : alg_(nullptr) {}
  explicit Element(const Algebra* alg) : alg_(alg) {}

  const Algebra* algebra() const { return alg_; }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const;  // normal-formed product
  Element operator*(const Scalar& c) const;
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  bool operator==(const Element& o) const { return alg_ == o.alg_ && terms_ == o.terms_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

  Element star() const;

  // Form degree; elements mixing degrees report no single degree.
  std::optional<int> degree() const;
  bool is_homogeneous() const { return is_zero() || degree().has_value(); }

  std::string str() const;

private:
  friend class Algebra;
  const Algebra* alg_;
  std::map<Word, Scalar> terms_;
};

inline Element operator*(const Scalar& c, const Element& e) { return e * c; }

struct Generator {
  std::string name;      // token name, e.g. "alpha", "z_"
  std::string display;   // pretty form, e.g. "α", "z*"
  int degree = 0;        // form degree
  int star = -1;         // index of star partner
  Scalar star_coef = Scalar::one();  // gen* = star_coef * gens[star]
  int weight = 1;        // term-order weight, >= 1
};

struct Rule {
  Word lhs;
  std::vector<std::pair<Word, Scalar>> rhs;
};

// Finitely presented *-algebra with a terminating rewriting system.
// Precedence: higher generator index = greater letter. Order: weighted
// degree, then length, then lexicographic.
class Algebra {
public:
  explicit Algebra(std::string name) : name_(std::move(name)) {}

  int add_generator(const std::string& name, int degree, int weight = 1,
                    const std::string& display = "");
  void set_star(int gen, int partner, const Scalar& coef = Scalar::one());
  void add_rule(const Word& lhs, const Element& rhs);
  void finalize();  // validates order/termination and star involutivity

  const std::string& name() const { return name_; }
  int num_generators() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int k) const { return gens_.at(static_cast<size_t>(k)); }
  int gen_index(const std::string& name) const;  // -1 when absent
  const std::vector<Rule>& rules() const { return rules_; }

  Element zero() const { return Element(this); }
  Element unit() const { return monomial(Word(), Scalar::one()); }
  Element generator(int k) const;
  Element monomial(const Word& w, const Scalar& c = Scalar::one()) const;

  // Weighted-deglex comparison: negative, zero, positive like strcmp.
  int cmp_words(const Word& a, const Word& b) const;
  long word_weight(const Word& w) const;
  int word_degree(const Word& w) const;

  Element normal_form(const Element& raw) const;
  Element nf_word(const Word& w, const Scalar& c) const;
  bool is_irreducible(const Word& w) const;

  Element mul(const Element& a, const Element& b) const;
  Element star(const Element& a) const;

  // All irreducible words of form degree <= max_degree and length <= max_len.
  std::vector<Word> irreducible_words(int max_degree, size_t max_len,
                                      size_t cap = 200000) const;

  struct OverlapFailure {
    Word superword;
    int rule_a = 0, rule_b = 0;
    Element left, right;
  };
  struct ConfluenceReport {
    long overlaps_checked = 0;
    std::vector<OverlapFailure> failures;
    bool confluent() const { return failures.empty(); }
  };
  ConfluenceReport check_local_confluence(size_t max_len) const;

  void set_rewrite_budget(long b) { rewrite_budget_ = b; }

  std::string word_str(const Word& w) const;

private:
  std::optional<std::pair<size_t, int>> find_redex(const Word& w) const;

  std::string name_;
  std::vector<Generator> gens_;
  std::vector<Rule> rules_;
  std::vector<std::vector<int>> rules_by_first_;
  bool finalized_ = false;
  long rewrite_budget_ = 4000000;
};

}  // namespace qb

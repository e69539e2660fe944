#include "qb/algebra.hpp"

#include <algorithm>
#include <deque>

namespace qb {

Element Element::operator+(const Element& o) const {
  Element r = *this;
  if (r.alg_ == nullptr) r.alg_ = o.alg_;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const {
  Element r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

Element Element::operator*(const Scalar& c) const {
  Element r(alg_);
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& [w, v] : r.terms_) v *= c;
  return r;
}

Element Element::operator*(const Element& o) const {
  if (alg_ && o.alg_ && alg_ != o.alg_)
    fail(Errc::Internal, "product of elements from different algebras");
  const Algebra* a = alg_ ? alg_ : o.alg_;
  return a->mul(*this, o);
}

Element Element::star() const { return alg_->star(*this); }

std::optional<int> Element::degree() const {
  if (is_zero()) return 0;
  std::optional<int> deg;
  for (const auto& [w, c] : terms_) {
    int d = alg_->word_degree(w);
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg;
}

std::string Element::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
               cs.find(" - ", 1) == std::string::npos && cs.find('/') == std::string::npos;
    if (neg) cs = cs.substr(1);
    bool simple = cs.find('+') == std::string::npos && cs.find(' ') == std::string::npos &&
                  cs.find('/') == std::string::npos;
    std::string ws = alg_->word_str(w);
    std::string term;
    if (ws == "1")
      term = simple ? cs : "(" + (neg ? "-" + cs : cs) + ")";
    else if (cs == "1")
      term = ws;
    else if (simple)
      term = cs + " " + ws;
    else
      term = "(" + (neg ? "-" + cs : cs) + ") " + ws;
    if (!simple && ws != "1") neg = false;
    if (first)
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

int Algebra::add_generator(const std::string& name, int degree, int weight,
                           const std::string& display) {
  if (finalized_) fail(Errc::Internal, "algebra already finalized");
  if (weight < 1) fail(Errc::NonTerminatingOrder, "generator weight must be >= 1");
  Generator g;
  g.name = name;
  g.display = display.empty() ? name : display;
  g.degree = degree;
  g.weight = weight;
  gens_.push_back(std::move(g));
  return static_cast<int>(gens_.size()) - 1;
}

void Algebra::set_star(int gen, int partner, const Scalar& coef) {
  gens_.at(static_cast<size_t>(gen)).star = partner;
  gens_.at(static_cast<size_t>(gen)).star_coef = coef;
}

int Algebra::gen_index(const std::string& name) const {
  for (size_t k = 0; k < gens_.size(); ++k)
    if (gens_[k].name == name || gens_[k].display == name) return static_cast<int>(k);
  return -1;
}

Element Algebra::generator(int k) const {
  Word w;
  w.push_back(static_cast<unsigned char>(k));
  return monomial(w);
}

Element Algebra::monomial(const Word& w, const Scalar& c) const {
  Element e(this);
  e.add_term(w, c);
  return e;
}

long Algebra::word_weight(const Word& w) const {
  long s = 0;
  for (unsigned char l : w) s += gens_[l].weight;
  return s;
}

int Algebra::word_degree(const Word& w) const {
  int s = 0;
  for (unsigned char l : w) s += gens_[l].degree;
  return s;
}

int Algebra::cmp_words(const Word& a, const Word& b) const {
  long wa = word_weight(a), wb = word_weight(b);
  if (wa != wb) return wa < wb ? -1 : 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  return 0;
}

void Algebra::add_rule(const Word& lhs, const Element& rhs) {
  if (finalized_) fail(Errc::Internal, "algebra already finalized");
  Rule r;
  r.lhs = lhs;
  for (const auto& [w, c] : rhs.terms()) r.rhs.emplace_back(w, c);
  rules_.push_back(std::move(r));
}

void Algebra::finalize() {
  for (const auto& r : rules_) {
    if (r.lhs.empty()) fail(Errc::NonTerminatingOrder, "empty rule left side");
    int d = word_degree(r.lhs);
    for (const auto& [w, c] : r.rhs) {
      if (cmp_words(r.lhs, w) <= 0)
        fail(Errc::NonTerminatingOrder,
             "rule " + word_str(r.lhs) + " -> ... does not decrease the term order at " +
                 word_str(w));
      if (word_degree(w) != d)
        fail(Errc::NonTerminatingOrder, "rule " + word_str(r.lhs) + " changes form degree");
    }
  }
  for (size_t k = 0; k < gens_.size(); ++k) {
    const Generator& g = gens_[k];
    if (g.star < 0 || g.star >= static_cast<int>(gens_.size()))
      fail(Errc::StarMismatch, "generator " + g.name + " has no star partner");
    const Generator& h = gens_[static_cast<size_t>(g.star)];
    if (h.star != static_cast<int>(k))
      fail(Errc::StarMismatch, "star pairing of " + g.name + " is not involutive");
    // (g*)* = conj(c_g) c_h g must be g
    Scalar round = g.star_coef.conj() * h.star_coef;
    if (!(round == Scalar::one()))
      fail(Errc::StarMismatch, "star coefficients of " + g.name + " are not involutive");
    if (h.degree != g.degree) fail(Errc::StarMismatch, "star must preserve degree");
  }
  rules_by_first_.assign(gens_.size(), {});
  for (size_t r = 0; r < rules_.size(); ++r)
    rules_by_first_[rules_[r].lhs[0]].push_back(static_cast<int>(r));
  finalized_ = true;
}

std::optional<std::pair<size_t, int>> Algebra::find_redex(const Word& w) const {
  if (!finalized_) return std::nullopt;  // unfinalized: words are taken verbatim
  for (size_t pos = 0; pos < w.size(); ++pos) {
    for (int ri : rules_by_first_[w[pos]]) {
      const Word& l = rules_[static_cast<size_t>(ri)].lhs;
      if (pos + l.size() <= w.size() && std::equal(l.begin(), l.end(), w.begin() + pos))
        return std::make_pair(pos, ri);
    }
  }
  return std::nullopt;
}

bool Algebra::is_irreducible(const Word& w) const { return !find_redex(w).has_value(); }

Element Algebra::nf_word(const Word& w0, const Scalar& c0) const {
  Element out(this);
  long budget = rewrite_budget_;
  std::deque<std::pair<Word, Scalar>> work;
  work.emplace_back(w0, c0);
  while (!work.empty()) {
    auto [w, c] = std::move(work.front());
    work.pop_front();
    if (c.is_zero()) continue;
    auto redex = find_redex(w);
    if (!redex) {
      out.add_term(w, c);
      continue;
    }
    if (--budget < 0)
      fail(Errc::RewriteBudgetExceeded,
           "rewrite budget exceeded in " + name_ + " on " + word_str(w0));
    auto [pos, ri] = *redex;
    const Rule& rule = rules_[static_cast<size_t>(ri)];
    Word prefix = w.substr(0, pos);
    Word suffix = w.substr(pos + rule.lhs.size());
    for (const auto& [rw, rc] : rule.rhs) {
      Word nw = prefix;
      nw += rw;
      nw += suffix;
      work.emplace_back(std::move(nw), c * rc);
    }
  }
  return out;
}

Element Algebra::normal_form(const Element& raw) const {
  Element out(this);
  for (const auto& [w, c] : raw.terms()) out += nf_word(w, c);
  return out;
}

Element Algebra::mul(const Element& a, const Element& b) const {
  Element out(this);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w += wb;
      out += nf_word(w, ca * cb);
    }
  return out;
}

Element Algebra::star(const Element& a) const {
  Element out(this);
  for (const auto& [w, c] : a.terms()) {
    Word rw;
    rw.reserve(w.size());
    Scalar coef = c.conj();
    int odd = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const Generator& g = gens_[*it];
      rw.push_back(static_cast<unsigned char>(g.star));
      coef *= g.star_coef;
      if (g.degree % 2 != 0) ++odd;
    }
    // Koszul sign for reversing a product of odd-degree letters
    if (((odd * (odd - 1) / 2) % 2) != 0) coef = -coef;
    out += nf_word(rw, coef);
  }
  return out;
}

std::vector<Word> Algebra::irreducible_words(int max_degree, size_t max_len, size_t cap) const {
  std::vector<Word> out;
  out.push_back(Word());
  size_t frontier_begin = 0;
  while (frontier_begin < out.size()) {
    size_t frontier_end = out.size();
    for (size_t k = frontier_begin; k < frontier_end; ++k) {
      if (out[k].size() >= max_len) continue;
      for (int g = 0; g < num_generators(); ++g) {
        Word w = out[k];
        w.push_back(static_cast<unsigned char>(g));
        if (word_degree(w) > max_degree) continue;
        if (!is_irreducible(w)) continue;
        out.push_back(std::move(w));
        if (out.size() > cap) fail(Errc::Internal, "irreducible word enumeration too large");
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

Algebra::ConfluenceReport Algebra::check_local_confluence(size_t max_len) const {
  ConfluenceReport rep;
  for (size_t a = 0; a < rules_.size(); ++a) {
    const Word& la = rules_[a].lhs;
    for (size_t b = 0; b < rules_.size(); ++b) {
      const Word& lb = rules_[b].lhs;
      // proper overlap: nonempty suffix of la equals prefix of lb
      for (size_t k = 1; k < la.size() && k <= lb.size(); ++k) {
        if (!std::equal(la.end() - static_cast<long>(k), la.end(), lb.begin())) continue;
        Word super = la;
        super.append(lb.begin() + static_cast<long>(k), lb.end());
        if (super.size() > max_len) continue;
        ++rep.overlaps_checked;
        // reduce via rule a at position 0
        Element left(this);
        for (const auto& [rw, rc] : rules_[a].rhs) {
          Word w = rw;
          w.append(super.begin() + static_cast<long>(la.size()), super.end());
          left += nf_word(w, rc);
        }
        Element right(this);
        size_t pos = la.size() - k;
        for (const auto& [rw, rc] : rules_[b].rhs) {
          Word w = super.substr(0, pos);
          w += rw;
          right += nf_word(w, rc);
        }
        if (!(left == right))
          rep.failures.push_back(
              {super, static_cast<int>(a), static_cast<int>(b), left, right});
      }
      // inclusion overlap: lb occurs strictly inside la
      if (a != b && lb.size() < la.size()) {
        for (size_t pos = 0; pos + lb.size() <= la.size(); ++pos) {
          if (pos == 0 && lb.size() == la.size()) continue;
          if (!std::equal(lb.begin(), lb.end(), la.begin() + static_cast<long>(pos))) continue;
          ++rep.overlaps_checked;
          Element left(this);
          for (const auto& [rw, rc] : rules_[a].rhs) left += nf_word(rw, rc);
          Element right(this);
          for (const auto& [rw, rc] : rules_[b].rhs) {
            Word w = la.substr(0, pos);
            w += rw;
            w.append(la.begin() + static_cast<long>(pos + lb.size()), la.end());
            right += nf_word(w, rc);
          }
          if (!(left == right))
            rep.failures.push_back(
                {la, static_cast<int>(a), static_cast<int>(b), left, right});
        }
      }
    }
  }
  return rep;
}

std::string Algebra::word_str(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  size_t k = 0;
  while (k < w.size()) {
    size_t run = 1;
    while (k + run < w.size() && w[k + run] == w[k]) ++run;
    if (!out.empty()) out += " ";
    out += gens_[w[k]].display;
    if (run > 1) out += "^" + std::to_string(run);
    k += run;
  }
  return out;
}

}  // namespace qb

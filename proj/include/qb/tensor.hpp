#pragma once

#include <functional>
#include <vector>

#include "qb/algebra.hpp"

namespace qb {

// Element of a tensor product of presented algebras. Each leg is kept in
// normal form; terms with any zero leg vanish. Products use the Koszul rule
// for odd form degrees.
class Tensor {
public:
  Tensor() = default;
  explicit Tensor(std::vector<const Algebra*> factors) : factors_(std::move(factors)) {}

  static Tensor of(const Element& a, const Element& b);
  static Tensor of(const Element& a, const Element& b, const Element& c);

  const std::vector<const Algebra*>& factors() const { return factors_; }
  size_t arity() const { return factors_.size(); }
  const std::map<std::vector<Word>, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<Word>& legs, const Scalar& c);
  void add_product_term(const std::vector<Element>& legs, const Scalar& c);

  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor operator-() const;
  Tensor operator*(const Scalar& c) const;
  Tensor operator*(const Tensor& o) const;  // componentwise graded product
  bool operator==(const Tensor& o) const;
  bool operator!=(const Tensor& o) const { return !(*this == o); }

  // Apply a linear map to one leg; the map may change the leg's algebra.
  Tensor map_leg(size_t leg, const Algebra* target,
                 const std::function<Element(const Element&)>& f) const;
  // Replace one leg by a tensor-valued map (e.g. a coproduct), splicing its
  // factors in place of the leg.
  Tensor splice_leg(size_t leg, const std::function<Tensor(const Element&)>& f) const;
  // Multiply two adjacent legs into one (no crossing, so no sign).
  Tensor merge_legs(size_t leg) const;
  // Contract away leg by a scalar-valued functional.
  Tensor contract_leg(size_t leg, const std::function<Scalar(const Element&)>& f) const;

  Element leg_coefficient(size_t leg, const Word& fixed_other) const;  // arity 2 helper
  Element as_element() const;                                          // arity 1 only
  std::string str(const std::string& sep = " ⊗ ") const;

private:
  int word_degree(size_t leg, const Word& w) const;
  std::vector<const Algebra*> factors_;
  std::map<std::vector<Word>, Scalar> terms_;
};

}  // namespace qb

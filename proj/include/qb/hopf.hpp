#pragma once

#include <functional>
#include <memory>

#include "qb/tensor.hpp"

namespace qb {

// Hopf *-algebra structure on a presented algebra: generator tables for the
// coproduct, counit and antipode, extended (anti)multiplicatively at call
// time.
class HopfAlgebra {
public:
  explicit HopfAlgebra(std::shared_ptr<Algebra> alg) : A_(std::move(alg)) {
    size_t n = static_cast<size_t>(A_->num_generators());
    phi_.resize(n);
    eps_.assign(n, Scalar::zero());
    kappa_.assign(n, A_->zero());
  }

  const Algebra* alg() const { return A_.get(); }
  std::shared_ptr<Algebra> alg_ptr() const { return A_; }

  void set_tables(int gen, Tensor phi, Scalar eps, Element kappa);

  Tensor coproduct(const Element& a) const;
  Tensor coproduct2(const Element& a) const;  // (phi x id) o phi, three legs
  Scalar counit(const Element& a) const;
  Element antipode(const Element& a) const;
  Tensor adjoint(const Element& a) const;  // Ad(h) = h(2) x kappa(h(1)) h(3)

  // Convolution of maps G -> B against the coproduct.
  Element convolve(const std::function<Element(const Element&)>& f,
                   const std::function<Element(const Element&)>& g, const Element& x) const;

  struct Report {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
  };
  // Counit/coassociativity/antipode axioms on generators plus random samples.
  Report check_axioms(int samples = 25, unsigned seed = 1) const;

private:
  std::shared_ptr<Algebra> A_;
  std::vector<Tensor> phi_;
  std::vector<Scalar> eps_;
  std::vector<Element> kappa_;
};

// Matrix corepresentation: coaction e_i -> sum_j e_j (x) m(j,i).
class Corep {
public:
  Corep(const HopfAlgebra* H, std::string name, std::vector<std::vector<Element>> matrix);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(m_.size()); }
  const Element& entry(int i, int j) const {
    return m_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
  }
  const HopfAlgebra* hopf() const { return H_; }

  // apply(v)_j = sum_i m(j,i) v_i : the V (x) G value of the coaction, as the
  // list of G-coefficients in the basis e_j.
  std::vector<Element> apply(const std::vector<Scalar>& v) const;

  struct Report {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
  };
  // Comatrix identities, both unitarity identities, antipode transpose and
  // invariance of the standard inner product.
  Report check() const;

private:
  const HopfAlgebra* H_;
  std::string name_;
  std::vector<std::vector<Element>> m_;
};

// T : V^alpha -> W intertwiner test against a target coaction given as a
// function w -> Tensor(W (x) G).
bool intertwines(const Corep& alpha, const std::vector<Element>& values,
                 const std::function<Tensor(const Element&)>& target_coaction);

// Character: multiplicative scalar table on generators. Validated against the
// defining rules at construction.
class Character {
public:
  Character(const HopfAlgebra* H, std::string name, std::vector<Scalar> gen_values);

  const std::string& name() const { return name_; }
  const HopfAlgebra* hopf() const { return H_; }
  Scalar operator()(const Element& a) const;
  Character convolve(const Character& other) const;  // (chi1 (x) chi2) o phi
  Character inverse() const;                         // chi o kappa

private:
  const HopfAlgebra* H_;
  std::string name_;
  std::vector<Scalar> vals_;
};

// Stock Hopf structures.
std::shared_ptr<HopfAlgebra> make_u1_hopf();
std::shared_ptr<HopfAlgebra> make_su_q2_hopf();
std::shared_ptr<HopfAlgebra> make_z2_hopf();

}  // namespace qb

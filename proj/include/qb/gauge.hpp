#pragma once

#include "qb/assoc.hpp"

namespace qb {

// Element of Omega(GM) (x)_{Omega(M)} Omega(GM), kept as a representative.
// Equality is decided through the canonical linear isomorphism beta with
// Omega(GM) (x) Gamma^.
class BalTensor {
public:
  explicit BalTensor(const Bundle* b) : b_(b) {}

  const Bundle* bundle() const { return b_; }
  const std::map<std::pair<Word, Word>, Scalar>& terms() const { return terms_; }
  bool is_zero_rep() const { return terms_.empty(); }

  void add_term(const Word& l, const Word& r, const Scalar& c);
  void add_product(const Element& l, const Element& r, const Scalar& c);

  BalTensor operator+(const BalTensor& o) const;
  BalTensor operator-(const BalTensor& o) const;
  BalTensor operator-() const;
  BalTensor operator*(const Scalar& c) const;
  BalTensor left_mul(const Element& a) const;   // a (x 1) . t
  BalTensor right_mul(const Element& a) const;  // t . (1 x a)

  Tensor beta() const;  // (x (x) 1) Psi(y)
  bool eq(const BalTensor& o) const;
  bool is_zero() const { return beta().is_zero(); }

  // graded differential of the balanced product
  BalTensor d() const;

  // multiply the two legs together
  Element merge() const;

  std::string str() const;

private:
  const Bundle* b_;
  std::map<std::pair<Word, Word>, Scalar> terms_;
};

// Degree-zero quantum translation map on the registered coefficient basis.
BalTensor qtrs0(const Bundle& b, const Element& g);
// Degree-one extension through a connection; the value is connection
// independent.
BalTensor qtrs1(const Bundle& b, const Connection& omega, const InvForm& th);
// On all of Gamma^ in degrees 0 and 1.
BalTensor qtrs(const Bundle& b, const Connection& omega, const Element& gamma_elt);

// Quantum gauge transformation: tables on the degree 0 and 1 spanning words
// of Gamma^, with a validated convolution inverse.
class Qgt {
public:
  Qgt(const Bundle* b, std::string name, std::map<Word, Element> table,
      std::map<Word, Element> inverse_table);

  const Bundle* bundle() const { return b_; }
  const std::string& name() const { return name_; }

  Element apply(const Element& gamma_elt) const;
  Element apply_inv(const Element& gamma_elt) const;
  Qgt inverse() const { return Qgt(b_, name_ + "^-1", finv_, f_); }

  // F_f = m (id x f) Psi
  Element F(const Element& w) const;
  Element F_inv(const Element& w) const;

  // certificate levels for the induced module map
  struct Certificate {
    bool left_module = false;     // always true by construction of F
    bool covariant = false;       // (F x id) Psi = Psi F
    bool multiplicative = false;  // F(ab) = F(a) F(b)
    bool star = false;            // F(a*) = F(a)*
    bool differential = false;    // F d = d F
  };
  Certificate certify(int samples = 12, unsigned seed = 7) const;

  struct Report {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
  };
  // convolution unit/inverse laws and Ad-covariance on the spanning set
  Report check() const;

  Qgt convolve(const Qgt& other) const;  // (f1 * f2((x)) phi

private:
  const Bundle* b_;
  std::string name_;
  std::map<Word, Element> f_, finv_;
};

// The spanning words of Gamma^ in degrees 0 and 1 up to the given length.
std::vector<Word> gamma_spanning(const Bundle& b, size_t max_len);

// Gauge transformation from a character of the structure group (degree-1
// values vanish). Checks the centrality condition.
Qgt char_to_gauge(const Bundle& b, const Character& chi);

// Build the f-table of a gauge transformation from a left-module map F given
// on the total forms, through the translation map. F must satisfy the
// covariance law; omega is any valid connection used to evaluate qtrs in
// degree 1.
Qgt qgt_from_F(const Bundle& b, const Connection& omega, const std::string& name,
               const std::function<Element(const Element&)>& F,
               const std::function<Element(const Element&)>& F_inv, size_t max_len = 3);

// f-circledast omega: the gauge action on connections.
Connection gauge_act(const Qgt& f, const Connection& omega);

// A_f on sections: compose values with F_f.
Section section_transform(const Qgt& f, const Section& T);
Section section_transform_inv(const Qgt& f, const Section& T);

}  // namespace qb

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qb/error.hpp"

namespace qb {

// Element of Q(i): exact Gaussian rational re + im*i.
struct GaussRat {
  mpq_class re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long n) : re(n), im(0) {}
  GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }

  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat operator/(const GaussRat& o) const;
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }

  std::string str() const;
};

// Polynomial in the formal parameter q with GaussRat coefficients.
class Poly {
public:
  Poly() = default;
  explicit Poly(GaussRat c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  static Poly q_pow(int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const GaussRat& lead() const { return c_.back(); }
  GaussRat coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : GaussRat();
  }
  void set_coeff(int k, GaussRat v);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly conj() const;

  // Euclidean division: *this = q*d + r with deg r < deg d.
  static void divrem(const Poly& a, const Poly& d, Poly& quo, Poly& rem);
  static Poly gcd(Poly a, Poly b);  // monic
  Poly monic() const;

  std::string str() const;

private:
  void trim();
  std::vector<GaussRat> c_;
};

// Element of the field Q(i)(q): reduced fraction with monic denominator.
// Conjugation fixes q and negates i.
class Scalar {
public:
  Scalar() : num_(), den_(GaussRat(1)) {}
  Scalar(long n) : num_(GaussRat(n)), den_(GaussRat(1)) {}
  Scalar(GaussRat c) : num_(std::move(c)), den_(GaussRat(1)) {}
  Scalar(Poly num, Poly den);

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar i() { return Scalar(GaussRat(mpq_class(0), mpq_class(1))); }
  static Scalar q(int pow = 1);
  static Scalar rational(long num, long den);
  static Scalar parse(const std::string& text);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar conj() const;
  Scalar inverse() const;
  Scalar pow(int k) const;

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  std::string str() const;

private:
  void reduce();
  Poly num_, den_;
};

inline Scalar operator*(long n, const Scalar& s) { return Scalar(n) * s; }

// q-integer [n]_t = 1 + t + ... + t^{n-1} and q-binomial in the variable t = q^e.
Scalar q_int(int n, int e);
Scalar q_binom(int n, int k, int e);

}  // namespace qb

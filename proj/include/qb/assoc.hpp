#pragma once

#include "qb/bundle.hpp"

namespace qb {

// Section of the associated qvb for a registered corepresentation: the value
// list T(e_1..n) in the degree-0 total algebra. Mixed-degree value lists
// represent qvb-valued differential forms.
struct Section {
  const Bundle* b = nullptr;
  std::string rep;
  std::vector<Element> values;

  bool check(bool degree0 = true) const;  // intertwiner condition
  Section star_values() const;            // entrywise star (not a section in general)
};

// Left qvb-valued form: sum_k mu_k (x)_M T^L_k with base-form coefficients.
struct QvbL {
  const Bundle* b = nullptr;
  std::string rep;
  std::vector<Element> mu;

  QvbL operator+(const QvbL& o) const;
  QvbL operator-() const;
  QvbL left_mul(const Element& base_form) const;
  // coefficient lists are canonicalized through the section values, so two
  // representatives of the same balanced element compare equal
  bool operator==(const QvbL& o) const;
  std::string str() const;
};

// Right qvb-valued form: sum_k T^R_k (x)_M mu_k.
struct QvbR {
  const Bundle* b = nullptr;
  std::string rep;
  std::vector<Element> mu;

  QvbR operator+(const QvbR& o) const;
  bool operator==(const QvbR& o) const;
  std::string str() const;
};

// generator sections T^L_k and T^R_k = z_k T^L_k
Section generator_section(const Bundle& b, const std::string& rep, int k);

// Eq-style decompositions: coefficients in the base algebra.
std::vector<Element> left_decompose(const Section& T);
std::vector<Element> right_decompose(const Section& T);
Section from_left_coeffs(const Bundle& b, const std::string& rep,
                         const std::vector<Element>& p);

// the intertwiner-space isomorphisms
QvbL upsilon(const Section& tau);         // values may be any horizontal degree
Section upsilon_inv(const QvbL& v);
QvbR tilde_upsilon(const Section& tau);
Section tilde_upsilon_inv(const QvbR& v);

// induced linear connections
QvbL nabla(const Connection& omega, const Section& T);
QvbR hat_nabla(const Connection& omega, const Section& T);

// exterior covariant derivative and curvature
QvbL ext_cov_deriv(const Connection& omega, const QvbL& v);
QvbR ext_cov_deriv_right(const Connection& omega, const QvbR& v);
QvbL curvature_assoc(const Connection& omega, const Section& T);

// canonical hermitian structures, on sections and on qvb-valued forms
Element herm_L(const Section& T1, const Section& T2);
Element herm_R(const Section& T1, const Section& T2);
Element herm_L(const QvbL& v1, const QvbL& v2);
Element herm_R(const QvbR& v1, const QvbR& v2);
Element herm_L(const QvbL& v1, const Section& T2);
Element herm_L(const Section& T1, const QvbL& v2);
Element herm_R(const QvbR& v1, const Section& T2);
Element herm_R(const Section& T1, const QvbR& v2);

// compatibility defect <nabla T1, T2> + <T1, nabla T2> - d<T1, T2>
enum class Side { Left, Right };
Element compat_defect(const Connection& omega, const Section& T1, const Section& T2, Side side);

// sigma = tilde-Upsilon o Upsilon^{-1}
QvbR sigma_map(const QvbL& v);

// pullback along a unitary scalar intertwiner between registered coreps:
// A_f(T) = T o f with f given by its n_beta x n_alpha matrix
Section unitary_pullback(const std::vector<std::vector<Scalar>>& f, const std::string& from_rep,
                         const Section& T);

// rho(p)_{kl} = sum_i x_{ki} p x*_{li}, the matrix realizing sections inside
// the free module
std::vector<std::vector<Element>> rho_matrix(const Bundle& b, const std::string& rep,
                                             const Element& p);

}  // namespace qb

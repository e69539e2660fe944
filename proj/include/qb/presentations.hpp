#pragma once

#include <memory>

#include "qb/algebra.hpp"

namespace qb {

// Shared presentations of the stock algebras.

// Circle algebra C[z, z*]: z z* = z* z = 1.
std::shared_ptr<Algebra> make_u1_algebra();

// SU_q(2) with the standard six relations; irreducible words are the
// PBW monomials alpha^k gamma^m gamma*^n and alpha*^{k+1} gamma^m gamma*^n.
std::shared_ptr<Algebra> make_su_q2_algebra();

// Group algebra of Z/2: a single group-like self-adjoint generator t, t^2 = 1.
std::shared_ptr<Algebra> make_z2_algebra();

// Differential graded algebra of 2x2 matrices: Pauli generators s1..s3 in
// degree 0 and central anticommuting t1..t3 in degree 1, with the inner
// derivation differential. Returned with its d table (one entry per
// generator).
struct PresentedDGA {
  std::shared_ptr<Algebra> alg;
  std::vector<Element> d_gen;
};
PresentedDGA make_matrix2_dga();

// One-point base: the complex numbers as a trivial graded algebra.
PresentedDGA make_point_dga();

// Laurent polynomials with sign: generators x, x^{-1}, s, all commuting,
// s^2 = 1, everything self-adjoint. Degree-0 part of the Dunkl total space.
std::shared_ptr<Algebra> make_sign_laurent_algebra();

// Derivation extension: d on words by the graded Leibniz rule from a
// generator table.
Element graded_derivative(const std::vector<Element>& d_gen, const Element& x);

}  // namespace qb

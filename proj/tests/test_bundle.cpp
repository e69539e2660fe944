#include "qb/bundle.hpp"

#include "doctest.h"
#include "qb/examples.hpp"

using namespace qb;

namespace {

InvForm basis_form(const Calculus& cal, int i) {
  InvForm e = cal.zero_form();
  e[static_cast<size_t>(i)] = Scalar::one();
  return e;
}

// independent Dunkl operator on C[x,x^-1,sign]: f -> f' dx + kappa (f - f~) x^-1 dx
// where f~ is the reflection x -> -x, s -> -s. Elements are handled through
// their (Laurent exponent, sign power) table.
Element dunkl_oracle(const Bundle& b, const Element& f, const Scalar& kappa) {
  const Algebra* Om = b.forms();
  int x = 0, xi = 1, s = 2, h = 3;
  Element out = Om->zero();
  for (const auto& [w, c] : f.terms()) {
    int deg = 0, sign = 0;
    for (unsigned char l : w) {
      if (static_cast<int>(l) == x) ++deg;
      if (static_cast<int>(l) == xi) --deg;
      if (static_cast<int>(l) == s) sign ^= 1;
      if (static_cast<int>(l) == h) fail(Errc::NotHorizontal, "oracle needs degree 0");
    }
    auto monom = [&](int e, int sg, const Scalar& coef, bool with_dx) {
      Word w2;
      for (int k = 0; k < e; ++k) w2.push_back(static_cast<unsigned char>(x));
      for (int k = 0; k < -e; ++k) w2.push_back(static_cast<unsigned char>(xi));
      if (sg) w2.push_back(static_cast<unsigned char>(s));
      if (with_dx) w2.push_back(static_cast<unsigned char>(h));
      return Om->monomial(w2, coef);
    };
    // derivative part: d(x^deg s^sign) = deg x^{deg-1} dx s^sign
    if (deg != 0) out += monom(deg - 1, sign, c * Scalar(deg), true);
    // difference part: kappa (f(x) - f(-x)) / x, nonzero iff deg+sign odd
    if ((deg + sign) % 2 != 0) out += monom(deg - 1, sign, c * Scalar(2) * kappa, true);
  }
  return out;
}

}  // namespace

TEST_CASE("trivial U(1) bundle over the matrix base") {
  auto ex = build_trivial_u1();
  auto rep = ex->bundle->check_qpb();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok());

  const Algebra* Om = ex->bundle->forms();
  int off = ex->gamma_offset;
  Element z = Om->generator(off), vs = Om->generator(off + 2);
  Element s3 = Om->generator(2), t3 = Om->generator(5);

  CHECK(ex->bundle->is_horizontal(s3));
  CHECK(ex->bundle->is_base(s3 * t3));
  CHECK_FALSE(ex->bundle->is_horizontal(vs));
  CHECK(ex->bundle->is_horizontal(s3 * z));
  CHECK_FALSE(ex->bundle->is_base(z));

  const Connection& triv = ex->connection("triv");
  CHECK(triv.check());
  CHECK(triv.is_real());
  CHECK(triv.is_multiplicative());
  auto reg = triv.is_regular(4);
  CHECK(reg.regular);
  CHECK(triv.curvature(basis_form(*ex->cal, 0)).is_zero());

  // D(1 x z^n) = 0 for the trivial connection
  for (int n = 1; n <= 3; ++n) {
    Element zn = Om->unit();
    for (int k = 0; k < n; ++k) zn = zn * z;
    CHECK(triv.cov_deriv(zn).is_zero());
    CHECK(triv.dual_cov_deriv(zn).is_zero());
  }
  // D restricted to base forms is d
  Element mu = s3 * t3;
  CHECK(triv.cov_deriv(mu) == ex->bundle->d(mu));

  const Connection& pot = ex->connection("potential");
  CHECK(pot.check());
  CHECK(pot.is_real());
  // R(vs) = d mu - mu mu with mu = i theta^3
  Element m1 = Scalar::i() * t3;
  Element expect = ex->bundle->d(m1) - m1 * m1;
  CHECK(pot.curvature(basis_form(*ex->cal, 0)) == expect);
  CHECK(expect == -Scalar::i() * (Om->generator(3) * Om->generator(4)));

  CHECK_FALSE(ex->connection("potential-imag").is_real());

  // potential decomposition round trip and field strength
  auto A = potential_decompose(*ex, pot);
  CHECK(A[0] == m1);
  auto F = field_strength(*ex, A);
  CHECK(F[0] == expect);
  auto A0 = potential_decompose(*ex, triv);
  CHECK(A0[0].is_zero());
}

TEST_CASE("one-point base degenerates cleanly") {
  auto ex = build_trivial_u1_point();
  CHECK(ex->bundle->check_qpb().ok());
  const Connection& triv = ex->connection("triv");
  CHECK(triv.check());
  CHECK(triv.is_regular(4).regular);
}

TEST_CASE("quantum Hopf fibration") {
  auto ex = build_hopf_fibration();
  auto rep = ex->bundle->check_qpb();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok());

  const Algebra* Om = ex->bundle->forms();
  Element a = Om->generator(0), as = Om->generator(1), c = Om->generator(2),
          cs = Om->generator(3);
  Element ep = Om->generator(ex->total_env->theta_letter(1));
  Element em = Om->generator(ex->total_env->theta_letter(2));

  const Connection& can = ex->connection("c");
  CHECK(can.check());
  CHECK(can.is_real());
  CHECK(can.is_multiplicative());
  CHECK(can.is_regular(3, 3).regular);
  CHECK(ex->connection("c-displaced").check());

  // monopole curvature is nonzero
  CHECK_FALSE(can.curvature(basis_form(*ex->cal, 0)).is_zero());

  // covariant derivatives of the section generators alpha^n
  for (int n = 1; n <= 3; ++n) {
    Element an = Om->unit();
    for (int k = 0; k < n; ++k) an = an * a;
    Scalar coef = -((Scalar::one() - Scalar::q(2 * n)) * Scalar::q(3 - 2 * n)) /
                  (Scalar::one() - Scalar::q(2));
    Element expect = Om->unit();
    for (int k = 0; k < n - 1; ++k) expect = expect * a;
    expect = expect * cs * ep * coef;
    CHECK(can.cov_deriv(an) == expect);
  }
  // the base recognizer accepts gamma gamma* and the curvature value
  CHECK(ex->bundle->is_base(c * cs));
  CHECK(ex->bundle->is_base(can.curvature(basis_form(*ex->cal, 0))));
  CHECK_FALSE(ex->bundle->is_base(a));
  CHECK(ex->bundle->is_horizontal(cs * ep));
}

TEST_CASE("Dunkl bundle") {
  Scalar kappa = Scalar::q();  // symbolic parameter
  auto ex = build_dunkl_rank1(kappa);
  auto rep = ex->bundle->check_qpb();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok());

  const Algebra* Om = ex->bundle->forms();
  Element x = Om->generator(0), xi = Om->generator(1), s = Om->generator(2),
          h = Om->generator(3);

  const Connection& can = ex->connection("c");
  CHECK(can.check());
  CHECK(can.is_real());
  CHECK(can.is_regular(4).regular);
  CHECK(can.is_multiplicative());
  CHECK(can.curvature(basis_form(*ex->cal, 0)).is_zero());

  const Connection& dunkl = ex->connection("dunkl");
  CHECK(dunkl.check());
  CHECK(dunkl.is_multiplicative());
  auto reg = dunkl.is_regular(4);
  CHECK_FALSE(reg.regular);
  MESSAGE(reg.witness);
  CHECK(dunkl.curvature(basis_form(*ex->cal, 0)).is_zero());

  CHECK(ex->connection("dunkl-real").is_real());
  CHECK_FALSE(dunkl.is_real());

  // D reproduces the Dunkl operator, symbolically in kappa
  CHECK(dunkl.cov_deriv(x) == (Scalar::one() + Scalar(2) * kappa) * h);
  CHECK(dunkl.cov_deriv(x * x) == Scalar(2) * (x * h));
  CHECK(dunkl.cov_deriv(s) == Scalar(2) * kappa * (s * (xi * h)));
  for (int k = 1; k <= 6; ++k) {
    Element xk = Om->unit();
    for (int j = 0; j < k; ++j) xk = xk * x;
    CHECK(dunkl.cov_deriv(xk) == dunkl_oracle(*ex->bundle, xk, kappa));
    CHECK(dunkl.cov_deriv(xk * s) == dunkl_oracle(*ex->bundle, xk * s, kappa));
  }
  CHECK(dunkl.cov_deriv(s) == dunkl_oracle(*ex->bundle, s, kappa));
  CHECK(dunkl.cov_deriv(xi) == dunkl_oracle(*ex->bundle, xi, kappa));
  // base forms: x^-1 dx is base, D restricted to base is d
  CHECK(ex->bundle->is_base(xi * h));
  Element mu = x * x;
  CHECK(dunkl.cov_deriv(mu) == ex->bundle->d(mu));
  // D on even elements equals d (the difference part vanishes on the base)
  CHECK(dunkl.cov_deriv(x * s) == ex->bundle->d(x * s));
}

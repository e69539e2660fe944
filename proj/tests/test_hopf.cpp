#include "qb/hopf.hpp"

#include "doctest.h"

using namespace qb;

TEST_CASE("hopf axioms for the stock structures") {
  for (auto maker : {make_u1_hopf, make_su_q2_hopf, make_z2_hopf}) {
    auto H = maker();
    auto rep = H->check_axioms(15);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
  }
}

TEST_CASE("coproduct values") {
  auto H = make_u1_hopf();
  const Algebra* A = H->alg();
  Element z = A->generator(0), zs = A->generator(1);
  CHECK(H->coproduct(z) == Tensor::of(z, z));
  CHECK(H->coproduct(A->unit()) == Tensor::of(A->unit(), A->unit()));
  CHECK(H->counit(z) == Scalar::one());
  CHECK(H->antipode(z) == zs);
  CHECK(H->antipode(A->unit()) == A->unit());
  // phi(z^2) = z^2 x z^2 agrees with expanding (z x z)^2
  CHECK(H->coproduct(z * z) == Tensor::of(z, z) * Tensor::of(z, z));

  auto Hq = make_su_q2_hopf();
  const Algebra* B = Hq->alg();
  Element a = B->generator(0), c = B->generator(2), cs = B->generator(3);
  CHECK(Hq->coproduct(a) == Tensor::of(a, a) - Tensor::of(cs, c) * Scalar::q());
  CHECK(Hq->counit(a) == Scalar::one());
}

TEST_CASE("corepresentations") {
  auto H = make_u1_hopf();
  const Algebra* A = H->alg();
  Element z = A->generator(0);
  for (int n = 1; n <= 3; ++n) {
    Element zn = A->unit();
    for (int k = 0; k < n; ++k) zn = zn * z;
    Corep rep(H.get(), "weight" + std::to_string(n), {{zn}});
    CHECK(rep.check().ok());
  }

  auto Hq = make_su_q2_hopf();
  const Algebra* B = Hq->alg();
  Element a = B->generator(0), as = B->generator(1), c = B->generator(2), cs = B->generator(3);
  Corep fund(Hq.get(), "fundamental", {{a, -Scalar::q() * cs}, {c, as}});
  auto r = fund.check();
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());

  // diagonal direct sum passes the comatrix identities but is reducible
  Corep diag(H.get(), "diag", {{z, A->zero()}, {A->zero(), z * z}});
  CHECK(diag.check().ok());

  // coaction application: alpha(e_i) = sum_j e_j x m(j,i)
  auto applied = fund.apply({Scalar::one(), Scalar::zero()});
  CHECK(applied[0] == a);
  CHECK(applied[1] == c);

  // matrix rows are intertwiners into (G, phi); columns are not
  CHECK(intertwines(fund, {a, -Scalar::q() * cs},
                    [&](const Element& x) { return Hq->coproduct(x); }));
  CHECK(intertwines(fund, {c, as}, [&](const Element& x) { return Hq->coproduct(x); }));
  CHECK_FALSE(intertwines(fund, {a, c},
                          [&](const Element& x) { return Hq->coproduct(x); }));
}

TEST_CASE("characters") {
  auto H = make_u1_hopf();
  const Algebra* A = H->alg();
  Element z = A->generator(0);
  Character chi(H.get(), "chi", {Scalar::i(), -Scalar::i()});
  Character psi(H.get(), "psi", {-Scalar::one(), -Scalar::one()});
  CHECK(chi.convolve(psi)(z) == chi(z) * psi(z));
  Character inv = chi.inverse();
  CHECK(chi.convolve(inv)(z) == H->counit(z));
  // mismatched table rejected: chi(z) chi(z*) must be 1
  CHECK_THROWS_AS(Character(H.get(), "bad", {Scalar(2), Scalar(3)}), Error);

  // convolution unit: f * (1 eps) = f on samples
  auto Hq = make_su_q2_hopf();
  const Algebra* B = Hq->alg();
  auto f = [&](const Element& x) { return Hq->antipode(x); };
  auto unit = [&](const Element& x) { return B->unit() * Hq->counit(x); };
  for (int g = 0; g < B->num_generators(); ++g) {
    Element x = B->generator(g);
    CHECK(Hq->convolve(f, unit, x) == f(x));
    CHECK(Hq->convolve(unit, f, x) == f(x));
  }
}

#include "qb/algebra.hpp"

#include <random>

#include "doctest.h"
#include "qb/presentations.hpp"

using namespace qb;

namespace {

Element rand_element(const Algebra& A, std::mt19937& rng, int max_len = 4, int nterms = 3) {
  std::uniform_int_distribution<int> len(0, max_len), g(0, A.num_generators() - 1),
      coef(-3, 3);
  Element e(&A);
  for (int t = 0; t < nterms; ++t) {
    Word w;
    int l = len(rng);
    for (int k = 0; k < l; ++k) w.push_back(static_cast<unsigned char>(g(rng)));
    e += A.normal_form(A.monomial(w, Scalar(coef(rng))));
  }
  return e;
}

}  // namespace

TEST_CASE("circle algebra") {
  auto A = make_u1_algebra();
  Element z = A->generator(0), zs = A->generator(1);
  CHECK(z * zs == A->unit());
  CHECK(z.star() == zs);
  CHECK((Scalar::i() * A->unit()).star() == -Scalar::i() * A->unit());

  auto rep = A->check_local_confluence(6);
  CHECK(rep.confluent());
  CHECK(rep.overlaps_checked >= 2);  // z z* z and z* z z*
}

TEST_CASE("su_q2 normal forms") {
  auto A = make_su_q2_algebra();
  Element a = A->generator(0), as = A->generator(1), c = A->generator(2), cs = A->generator(3);

  CHECK(c * a == Scalar::q(-1) * (a * c));
  CHECK(as * a + cs * c == A->unit());
  CHECK(a * as + Scalar::q(2) * (c * cs) == A->unit());

  // stars are antimultiplicative then normalized
  CHECK((a * c).star() == Scalar::q() * (as * cs));
  CHECK(a.star() == as);

  CHECK(A->check_local_confluence(6).confluent());
}

TEST_CASE("su_q2 PBW basis enumeration") {
  auto A = make_su_q2_algebra();
  auto words = A->irreducible_words(0, 3);
  // alpha^k gamma^m gamma*^n with k+m+n <= 3 gives 20 words,
  // alpha*^{j} gamma^m gamma*^n with j >= 1, j+m+n <= 3 gives 10 more
  CHECK(words.size() == 30);
  for (const auto& w : words) {
    bool seen_star_family = false, ok = true;
    int last_kind = -1;
    for (unsigned char l : w) {
      // order: alpha(0) then gamma(2) then gamma*(3); or alpha*(1) then gamma then gamma*
      int kind = (l == 0) ? 0 : (l == 1) ? 0 : (l == 2) ? 1 : 2;
      if (l == 1) seen_star_family = true;
      if (kind < last_kind) ok = false;
      last_kind = kind;
    }
    CHECK(ok);
    if (seen_star_family)
      for (unsigned char l : w) CHECK(l != 0);
  }
}

TEST_CASE("rewrite budget guard") {
  auto A = make_su_q2_algebra();
  A->set_rewrite_budget(2);
  Word w;
  for (int k = 0; k < 6; ++k) {
    w.push_back(3);
    w.push_back(0);
  }
  CHECK_THROWS_AS(A->normal_form(A->monomial(w)), Error);
}

TEST_CASE("termination guard") {
  Algebra A("bad");
  int x = A.add_generator("x", 0);
  A.set_star(x, x);
  Word w;
  w.push_back(static_cast<unsigned char>(x));
  A.add_rule(w, A.monomial(w));
  CHECK_THROWS_AS(A.finalize(), Error);
}

TEST_CASE("unresolved critical pair") {
  Algebra A("pair");
  int x = A.add_generator("x", 0);
  int y = A.add_generator("y", 0);
  A.set_star(x, x);
  A.set_star(y, y);
  Word xy, yx;
  xy.push_back(static_cast<unsigned char>(x));
  xy.push_back(static_cast<unsigned char>(y));
  yx.push_back(static_cast<unsigned char>(y));
  yx.push_back(static_cast<unsigned char>(x));
  A.add_rule(xy, A.unit());
  Word wx;
  wx.push_back(static_cast<unsigned char>(x));
  A.add_rule(yx, A.monomial(wx));
  A.finalize();
  auto rep = A.check_local_confluence(6);
  CHECK_FALSE(rep.confluent());
  bool found = false;
  for (const auto& f : rep.failures)
    if (A.word_str(f.superword) == "x y x") found = true;
  CHECK(found);
}

TEST_CASE("normal form is idempotent and multiplicative on random elements") {
  std::mt19937 rng(3);
  for (auto maker : {make_u1_algebra, make_su_q2_algebra, make_z2_algebra}) {
    auto A = maker();
    for (int t = 0; t < 200; ++t) {
      Element e = rand_element(*A, rng);
      CHECK(A->normal_form(e) == e);
      Element f = rand_element(*A, rng);
      // congruence: nf(ef) = nf(nf(e) nf(f)) is how mul is implemented; check
      // associativity-style congruence instead
      Element g = rand_element(*A, rng, 2, 2);
      CHECK((e * f) * g == e * (f * g));
      CHECK((e * f).star() == f.star() * e.star());
      CHECK(e.star().star() == e);
    }
  }
}

TEST_CASE("matrix differential algebra") {
  auto [A, d] = make_matrix2_dga();
  // d^2 = 0 on generators
  for (int g = 0; g < A->num_generators(); ++g) {
    Element dg = d[static_cast<size_t>(g)];
    CHECK(graded_derivative(d, dg).is_zero());
  }
  // graded Leibniz on random pairs
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    Element e = rand_element(*A, rng, 3, 2);
    Element f = rand_element(*A, rng, 3, 2);
    if (!e.is_homogeneous()) continue;
    int k = e.degree().value_or(0);
    Element lhs = graded_derivative(d, e * f);
    Element rhs = graded_derivative(d, e) * f +
                  Scalar(k % 2 == 0 ? 1 : -1) * (e * graded_derivative(d, f));
    CHECK(lhs == rhs);
  }
  // d commutes with star on generators
  for (int g = 0; g < A->num_generators(); ++g)
    CHECK(d[static_cast<size_t>(g)].star() == graded_derivative(d, A->generator(g).star()));
  CHECK(A->check_local_confluence(6).confluent());
}

#include "qb/parse.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qb/examples.hpp"
#include "qb/presentations.hpp"

using namespace qb;

TEST_CASE("element expressions") {
  auto A = make_su_q2_algebra();
  Element a = A->generator(0), as = A->generator(1), c = A->generator(2), cs = A->generator(3);
  CHECK(parse_element(A.get(), "alpha gamma") == a * c);
  CHECK(parse_element(A.get(), "gamma alpha") == Scalar::q(-1) * (a * c));
  CHECK(parse_element(A.get(), "alpha* alpha + gamma* gamma") == A->unit());
  CHECK(parse_element(A.get(), "alpha^2") == a * a);
  CHECK(parse_element(A.get(), "(1+q^2) gamma") == (Scalar::one() + Scalar::q(2)) * c);
  CHECK(parse_element(A.get(), "2 i alpha - alpha*") == Scalar(2) * Scalar::i() * a - as);
  CHECK(parse_element(A.get(), "q gamma*") == Scalar::q() * cs);
  CHECK_THROWS_AS(parse_element(A.get(), "beta"), Error);
  CHECK_THROWS_AS(parse_element(A.get(), "alpha +"), Error);
}

TEST_CASE("tensor expressions") {
  auto H = make_su_q2_hopf();
  const Algebra* A = H->alg();
  Tensor t = parse_tensor(A, "alpha @ alpha - q gamma* @ gamma");
  CHECK(t == H->coproduct(A->generator(0)));
}

TEST_CASE("presentation files round-trip the matrix base") {
  ParsedPresentation pp = parse_presentation(kMatrix2BaseText);
  REQUIRE(pp.algebra);
  REQUIRE(pp.d_gen.size() == 6);
  CHECK(pp.algebra->check_local_confluence(6).confluent());

  // agrees with the built-in construction
  auto built = make_matrix2_dga();
  REQUIRE(pp.algebra->num_generators() == built.alg->num_generators());
  for (int g1 = 0; g1 < 6; ++g1)
    for (int g2 = 0; g2 < 6; ++g2) {
      Word w;
      w.push_back(static_cast<unsigned char>(g1));
      w.push_back(static_cast<unsigned char>(g2));
      Element lhs = pp.algebra->normal_form(pp.algebra->monomial(w));
      Element rhs = built.alg->normal_form(built.alg->monomial(w));
      // same coefficients on the same words
      REQUIRE(lhs.terms().size() == rhs.terms().size());
      auto it = rhs.terms().begin();
      for (const auto& [word, c] : lhs.terms()) {
        CHECK(word == it->first);
        CHECK(c == it->second);
        ++it;
      }
    }
  for (int g = 0; g < 6; ++g) {
    const auto& lhs = pp.d_gen[static_cast<size_t>(g)];
    const auto& rhs = built.d_gen[static_cast<size_t>(g)];
    REQUIRE(lhs.terms().size() == rhs.terms().size());
  }

  // the shipped fixture file matches the embedded text
  std::ifstream in(std::string(QB_FIXTURES_DIR) + "/matrix2_base.qpa");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  ParsedPresentation file = parse_presentation(ss.str());
  CHECK(file.algebra->num_generators() == 6);
  CHECK(file.algebra->rules().size() == pp.algebra->rules().size());
}

TEST_CASE("diagnostics") {
  CHECK_THROWS_WITH_AS(parse_presentation("x = 1\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_AS(parse_presentation("[algebra a]\ngenerators = x:0\n"), Error);
  // non-terminating rule is rejected at finalize
  CHECK_THROWS_AS(parse_presentation("[algebra a]\ngenerators = x:0:x\nrules = x -> x\n"),
                  Error);
}

TEST_CASE("hopf and corep sections") {
  std::string text = R"(
[algebra circle]
generators = z:0:z*, z*:0:z
rules = z z* -> 1; z* z -> 1

[hopf]
phi z = z @ z
phi z* = z* @ z*
eps z = 1
eps z* = 1
kappa z = z*
kappa z* = z

[corep weight2]
dim = 1
matrix = [[z^2]]

[fodc]
ideal = (z - 1)(z - 1); (z - 1)(z* - 1); (z* - 1)(z - 1); (z* - 1)(z* - 1)
basis = vs
preimages = z
)";
  ParsedPresentation pp = parse_presentation(text);
  REQUIRE(pp.hopf);
  CHECK(pp.hopf->check_axioms(10).ok());
  REQUIRE(pp.coreps.size() == 1);
  Corep rep(pp.hopf.get(), pp.coreps[0].name, pp.coreps[0].matrix);
  CHECK(rep.check().ok());
  REQUIRE(pp.has_fodc);
  auto cal = std::make_shared<Calculus>(pp.hopf, pp.ideal, pp.theta_names,
                                        pp.theta_names, pp.preimages);
  Envelope env(cal);
  CHECK(cal->check(env, 8).ok());
}

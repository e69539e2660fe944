#include "qb/suite.hpp"

#include "doctest.h"
#include "json.hpp"

using namespace qb;

TEST_CASE("reports are deterministic and round-trip through JSON") {
  auto ex = build_example("trivial-u1-point", Scalar::q());
  SuiteReport a = run_suite(ex, "germs", 4, 1);
  SuiteReport b = run_suite(ex, "germs", 4, 4);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  REQUIRE(a.checks.size() == b.checks.size());
  for (size_t k = 0; k < a.checks.size(); ++k) {
    CHECK(a.checks[k].id == b.checks[k].id);
    CHECK(a.checks[k].result.status == b.checks[k].result.status);
  }

  // parse -> serialize is the identity on the canonical form
  std::string text = a.to_json();
  auto parsed = nlohmann::ordered_json::parse(text);
  CHECK(parsed.dump(2) == text);
  CHECK(parsed["schema"] == "qbundle-report-1");
  CHECK(parsed["overall"] == "pass");
  for (const auto& c : parsed["checks"]) CHECK(!c["ref"].get<std::string>().empty());
}

TEST_CASE("a corrupted registration is reported with a witness") {
  auto ex = build_trivial_u1();
  // corrupt: a section generator that breaks the column normalization
  const Algebra* Om = ex->bundle->forms();
  Element z = Om->generator(ex->gamma_offset);
  Bundle::RepData bad{Corep(ex->G.get(), "n=1", {{ex->G->alg()->generator(0)}}),
                      {{Scalar(2) * z}},
                      {Scalar::one()},
                      {{Scalar::one()}}};
  ex->bundle->register_rep("bad", std::move(bad));
  auto rep = ex->bundle->check_qpb(5);
  REQUIRE_FALSE(rep.ok());
  bool named = false;
  for (const auto& f : rep.failures)
    if (f.find("bad") != std::string::npos && f.find("(0,0)") != std::string::npos)
      named = true;
  CHECK(named);
}

TEST_CASE("a perturbed connection table fails the identity suite") {
  auto ex = build_example("trivial-u1-point", Scalar::q());
  // displace by a non-covariant 1-form: the vertical generator itself
  const Algebra* Om = ex->bundle->forms();
  Element vs = Om->generator(2);
  Connection badconn = ex->connection("triv").displaced("bad", {vs});
  CHECK_FALSE(badconn.check());
  ex->connections.emplace("bad", badconn);
  SuiteReport rep = run_suite(ex, "connection");
  CHECK_FALSE(rep.ok());
  bool witnessed = false;
  for (const auto& c : rep.checks)
    if (c.result.status == "fail" && !c.result.witness.empty()) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("regularity reports carry their truncation budget") {
  auto ex = build_example("dunkl-rank1", Scalar::q());
  SuiteReport rep = run_suite(ex, "connection");
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.id == "not-regular-dunkl") {
      found = true;
      CHECK(c.result.budget == 4);
      CHECK(c.result.status == "pass");
      CHECK(!c.result.witness.empty());  // the explicit witness
    }
  CHECK(found);
}

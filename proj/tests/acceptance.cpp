// Acceptance suite: one pass/fail line per criterion, exit code 0 only when
// every criterion holds. All comparisons are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "qb/parse.hpp"
#include "qb/suite.hpp"

using namespace qb;

namespace {

int g_failures = 0;
double g_total_seconds = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_total_seconds += secs;
  if (!ok) ++g_failures;
  std::printf("criterion %2d [%s] %s (%.2fs)%s%s\n", number, ok ? "PASS" : "FAIL", label.c_str(),
              secs, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

Element powmul(const Element& x, int n) {
  Element out = x.algebra()->unit();
  for (int k = 0; k < n; ++k) out = out * x;
  return out;
}

bool suite_clean(const std::shared_ptr<Example>& ex, const std::string& suite,
                 std::string& detail, const std::vector<std::string>& required = {}) {
  SuiteReport rep = run_suite(ex, suite);
  if (!rep.ok()) {
    for (const auto& c : rep.checks)
      if (c.result.status == "fail") {
        detail = ex->name + ": " + c.id + ": " + c.result.witness;
        return false;
      }
  }
  for (const auto& want : required) {
    bool seen = false;
    for (const auto& c : rep.checks)
      if (c.id == want && c.result.status == "pass") seen = true;
    if (!seen) {
      detail = ex->name + ": required check " + want + " missing or not passing";
      return false;
    }
  }
  return true;
}

// independent Dunkl oracle: f -> f' dx + kappa (f(x) - f(-x)) x^-1 dx on the
// monomial basis x^deg sign^s
Element dunkl_oracle(const Bundle& b, const Element& f, const Scalar& kappa) {
  const Algebra* Om = b.forms();
  Element out = Om->zero();
  for (const auto& [w, c] : f.terms()) {
    int deg = 0, sign = 0;
    for (unsigned char l : w) {
      if (l == 0) ++deg;
      if (l == 1) --deg;
      if (l == 2) sign ^= 1;
    }
    auto monom = [&](int e, int sg, const Scalar& coef) {
      Word w2;
      for (int k = 0; k < e; ++k) w2.push_back(0);
      for (int k = 0; k < -e; ++k) w2.push_back(1);
      if (sg) w2.push_back(2);
      w2.push_back(3);
      return Om->monomial(w2, coef);
    };
    if (deg != 0) out += monom(deg - 1, sign, c * Scalar(deg));
    if ((deg + sign) % 2 != 0) out += monom(deg - 1, sign, c * Scalar(2) * kappa);
  }
  return out;
}

}  // namespace

int main() {
  Scalar kappa = Scalar::q();
  auto trivial = build_example("trivial-u1", kappa);
  auto point = build_example("trivial-u1-point", kappa);
  auto hopf = build_example("hopf-fibration", kappa);
  auto dunkl = build_example("dunkl-rank1", kappa);
  std::vector<std::shared_ptr<Example>> all = {trivial, point, hopf, dunkl};

  criterion(1, "quantum germs identities on the three structure group calculi",
            [&](std::string& detail) {
              for (const auto& ex : all)
                if (!suite_clean(ex, "germs", detail,
                                 {"germs-differential", "germs-star", "germs-d-pi"}))
                  return false;
              return true;
            });

  criterion(2, "orthogonality identities for the registered corepresentations",
            [&](std::string& detail) {
              // U(1) weights |n| <= 3
              for (int n = -3; n <= 3; ++n) {
                auto rep = trivial->bundle->rep("n=" + std::to_string(n)).corep.check();
                if (!rep.ok()) {
                  detail = "U(1) weight " + std::to_string(n) + ": " + rep.failures[0];
                  return false;
                }
              }
              // SU_q(2) fundamental matrix
              auto Hq = make_su_q2_hopf();
              const Algebra* B = Hq->alg();
              Corep fund(Hq.get(), "fundamental",
                         {{B->generator(0), -Scalar::q() * B->generator(3)},
                          {B->generator(2), B->generator(1)}});
              auto fr = fund.check();
              if (!fr.ok()) {
                detail = "fundamental: " + fr.failures[0];
                return false;
              }
              // Z/2 sign representation
              auto sr = dunkl->bundle->rep("sign").corep.check();
              if (!sr.ok()) {
                detail = "sign: " + sr.failures[0];
                return false;
              }
              return true;
            });

  criterion(3, "connection layer verdicts for the three named connections",
            [&](std::string& detail) {
              const Connection& triv = trivial->connection("triv");
              const Connection& can = hopf->connection("c");
              const Connection& dk = dunkl->connection("dunkl");
              if (!triv.check() || !can.check() || !dk.check()) {
                detail = "a named connection fails its defining condition";
                return false;
              }
              if (!triv.is_real() || !triv.is_multiplicative()) {
                detail = "trivial connection lost reality or multiplicativity";
                return false;
              }
              auto reg = triv.is_regular(4);
              if (!reg.regular) {
                detail = "trivial connection not regular at budget 4";
                return false;
              }
              InvForm e(1, Scalar::one());
              if (!triv.curvature(e).is_zero()) {
                detail = "trivial connection not flat";
                return false;
              }
              if (!dk.is_multiplicative()) {
                detail = "Dunkl connection not multiplicative";
                return false;
              }
              auto dreg = dk.is_regular(4);
              if (dreg.regular) {
                detail = "Dunkl connection unexpectedly regular";
                return false;
              }
              detail = "Dunkl regularity witness: " + dreg.witness;
              return true;
            });

  criterion(4, "Dunkl covariant derivative matches the difference-operator oracle",
            [&](std::string& detail) {
              const Connection& dk = dunkl->connection("dunkl");
              const Algebra* Om = dunkl->bundle->forms();
              Element x = Om->generator(0), s = Om->generator(2);
              for (int k = 1; k <= 6; ++k) {
                Element xk = powmul(x, k);
                if (!(dk.cov_deriv(xk) == dunkl_oracle(*dunkl->bundle, xk, kappa))) {
                  detail = "fails at x^" + std::to_string(k);
                  return false;
                }
                Element xks = xk * s;
                if (!(dk.cov_deriv(xks) == dunkl_oracle(*dunkl->bundle, xks, kappa))) {
                  detail = "fails at x^" + std::to_string(k) + " s";
                  return false;
                }
              }
              if (!(dk.cov_deriv(s) == dunkl_oracle(*dunkl->bundle, s, kappa))) {
                detail = "fails at s";
                return false;
              }
              Element xs = x * s;
              if (!(dk.cov_deriv(xs) == dunkl_oracle(*dunkl->bundle, xs, kappa))) {
                detail = "fails at x s";
                return false;
              }
              return true;
            });

  criterion(5, "hermitian compatibility of the induced connections", [&](std::string& detail) {
    // line bundle with a real potential, both sides, explicit display
    {
      const Algebra* Om = trivial->bundle->forms();
      int off = trivial->gamma_offset;
      Element z = Om->generator(off);
      const Connection& pot = trivial->connection("potential");
      Element p1 = Om->generator(0) + Scalar::i() * Om->generator(2);
      Element p2 = Om->generator(1);
      Section T1{trivial->bundle.get(), "n=1", {p1 * z}};
      Section T2{trivial->bundle.get(), "n=1", {p2 * z}};
      Element lhs = herm_L(nabla(pot, T1), T2) + herm_L(T1, nabla(pot, T2));
      Element display = trivial->bundle->d(p1) * p2.star() + p1 * trivial->bundle->d(p2).star();
      if (!(lhs == display) || !(display == trivial->bundle->d(herm_L(T1, T2)))) {
        detail = "line bundle display mismatch";
        return false;
      }
      if (!compat_defect(pot, T1, T2, Side::Left).is_zero() ||
          !compat_defect(pot, T1, T2, Side::Right).is_zero()) {
        detail = "line bundle defect nonzero";
        return false;
      }
    }
    // Hopf fibration with the canonical connection at n = 1, 2, with the two
    // exact intermediate values
    {
      const Algebra* Om = hopf->bundle->forms();
      Element a = Om->generator(0), as = Om->generator(1), c = Om->generator(2),
              cs = Om->generator(3);
      Element ep = Om->generator(hopf->total_env->theta_letter(1));
      Element em = Om->generator(hopf->total_env->theta_letter(2));
      const Connection& can = hopf->connection("c");
      Scalar one = Scalar::one(), q = Scalar::q();
      for (int n = 1; n <= 2; ++n) {
        Section T{hopf->bundle.get(), "n=" + std::to_string(n), {powmul(a, n)}};
        Scalar qn = Scalar::q(2 * n);
        Element v1 = herm_L(nabla(can, T), T);
        Element w1 =
            powmul(a, n - 1) * powmul(as, n) * cs * ep * (-(one - qn) * q.pow(3) / (one - q * q));
        Element v2 = herm_L(T, nabla(can, T));
        Element w2 =
            powmul(a, n) * powmul(as, n - 1) * c * em * (-(one - qn) * q / (one - q * q));
        if (!(v1 == w1) || !(v2 == w2)) {
          detail = "intermediate values differ at n=" + std::to_string(n);
          return false;
        }
        if (!compat_defect(can, T, T, Side::Left).is_zero() ||
            !compat_defect(can, T, T, Side::Right).is_zero()) {
          detail = "Hopf defect nonzero at n=" + std::to_string(n);
          return false;
        }
      }
    }
    // Dunkl bundle with the real Dunkl connection
    {
      const Connection& dr = dunkl->connection("dunkl-real");
      const Algebra* Om = dunkl->bundle->forms();
      Element x = Om->generator(0), s = Om->generator(2);
      Section T1{dunkl->bundle.get(), "sign", {s}};
      Section T2{dunkl->bundle.get(), "sign", {x * x * s}};
      if (!compat_defect(dr, T1, T2, Side::Left).is_zero() ||
          !compat_defect(dr, T1, T2, Side::Right).is_zero() ||
          !compat_defect(dr, T2, T2, Side::Left).is_zero()) {
        detail = "Dunkl defect nonzero";
        return false;
      }
    }
    return true;
  });

  criterion(6, "induced connection displays on the trivial bundle", [&](std::string& detail) {
    const Algebra* Om = trivial->bundle->forms();
    int off = trivial->gamma_offset;
    Element z = Om->generator(off), zs = Om->generator(off + 1);
    const Connection& triv = trivial->connection("triv");
    // flat-frame formula for |n| <= 3
    std::vector<Element> pbasis = {Om->unit(), Om->generator(0), Om->generator(1),
                                   Om->generator(2)};
    for (int n = -3; n <= 3; ++n) {
      std::string rep = "n=" + std::to_string(n);
      Element zn = powmul(n >= 0 ? z : zs, std::abs(n));
      for (const auto& p : pbasis) {
        Section T{trivial->bundle.get(), rep, {p * zn}};
        auto pc = left_decompose(T);
        QvbL nt = nabla(triv, T);
        for (size_t k = 0; k < pc.size(); ++k)
          if (!(nt.mu[k] == trivial->bundle->d(pc[k]))) {
            detail = "flat frame formula fails at n=" + std::to_string(n);
            return false;
          }
        QvbR ht = hat_nabla(triv, T);
        for (size_t k = 0; k < pc.size(); ++k)
          if (!(ht.mu[k] == trivial->bundle->d(pc[k]))) {
            detail = "right flat frame formula fails at n=" + std::to_string(n);
            return false;
          }
      }
    }
    // potential displays for a basis of symbolic p and mu
    std::vector<Element> mubasis;
    for (int t = 3; t < 6; ++t) {
      mubasis.push_back(Scalar::i() * Om->generator(t));
      mubasis.push_back(Scalar::i() * (Om->generator(0) * Om->generator(t)));
    }
    for (const auto& mu : mubasis) {
      Connection omega = triv.displaced("tmp", {mu});
      for (int n : {1, 2, 3, -1, -2, -3}) {
        std::string rep = "n=" + std::to_string(n);
        Element zn = powmul(n >= 0 ? z : zs, std::abs(n));
        for (const auto& p : pbasis) {
          Section T{trivial->bundle.get(), rep, {p * zn}};
          if (!(nabla(omega, T).mu[0] == trivial->bundle->d(p) - Scalar(n) * (p * mu))) {
            detail = "left potential display fails";
            return false;
          }
          if (!(hat_nabla(omega, T).mu[0] ==
                trivial->bundle->d(p) + Scalar(n) * (mu.star() * p))) {
            detail = "right potential display fails";
            return false;
          }
        }
      }
    }
    return true;
  });

  criterion(7, "translation map values and properties", [&](std::string& detail) {
    for (const auto& ex : all)
      if (!suite_clean(ex, "qtrs", detail,
                       ex->name == "hopf-fibration"
                           ? std::vector<std::string>{"qtrs-binomial",
                                                      "qtrs-connection-independence"}
                           : std::vector<std::string>{"qtrs-connection-independence"}))
        return false;
    return true;
  });

  criterion(8, "gauge action, curvature transport and section automorphisms",
            [&](std::string& detail) {
              for (const auto& ex : all)
                if (!suite_clean(ex, "gauge", detail)) return false;
              // the unitary gauge transformation reproduces the potential p* dp
              const Qgt& f = trivial->qgts.at("unitary-p");
              Connection acted = gauge_act(f, trivial->connection("triv"));
              auto A = potential_decompose(*trivial, acted);
              const Algebra* Om = trivial->bundle->forms();
              Scalar half = (Scalar::one() + Scalar::i()) * Scalar::rational(1, 2);
              Element p = half * Om->unit() + half.conj() * Om->generator(2);
              if (!(A[0] == p.star() * trivial->bundle->d(p))) {
                detail = "transformed potential is not p* dp";
                return false;
              }
              // curvature transport for a character-induced transformation
              const Qgt& chi = trivial->qgts.at("chi_i");
              auto cert = chi.certify();
              if (!cert.differential || !cert.multiplicative || !cert.star) {
                detail = "character map lost its differential certificate";
                return false;
              }
              return true;
            });

  criterion(9, "module-map correspondence round trips", [&](std::string& detail) {
    for (const auto& ex : all) {
      SuiteReport rep = run_suite(ex, "gauge");
      bool saw_roundtrip = false;
      for (const auto& c : rep.checks) {
        if (c.id.rfind("gauge-roundtrip-", 0) == 0) {
          saw_roundtrip = true;
          if (c.result.status != "pass") {
            detail = ex->name + ": " + c.id + " " + c.result.witness;
            return false;
          }
        }
        if (c.id == "gauge-action-law" && c.result.status == "fail") {
          detail = ex->name + ": action law fails";
          return false;
        }
      }
      if (!saw_roundtrip) {
        detail = ex->name + ": no round-trip checks ran";
        return false;
      }
    }
    return true;
  });

  criterion(10, "engine health and full-suite wall clock", [&](std::string& detail) {
    for (const auto& ex : all)
      if (!suite_clean(ex, "engine", detail,
                       {"normal-form-idempotent", "normal-form-congruence"}))
        return false;
    double total = 0;
    for (const auto& ex : all) {
      SuiteReport rep = run_suite(ex, "all");
      total += rep.runtime_seconds;
      if (!rep.ok()) {
        detail = ex->name + ": full suite has a failure";
        return false;
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "full suites: %.1fs", total);
    detail = buf;
    return total < 300.0;
  });

  std::printf("acceptance total: %.1fs, %s\n", g_total_seconds,
              g_failures == 0 ? "all criteria pass" : "FAILURES PRESENT");
  return g_failures == 0 ? 0 : 1;
}

#pragma once

#include "qb/bundle.hpp"
#include "qb/gauge.hpp"

namespace qb {

// A fully registered example bundle: structure group data, total calculus,
// named connections and corepresentation data.
struct Example {
  std::string name;
  std::shared_ptr<HopfAlgebra> G;
  std::shared_ptr<Calculus> cal;
  std::shared_ptr<Bundle> bundle;
  std::map<std::string, Connection> connections;
  std::map<std::string, Qgt> qgts;
  std::vector<Character> characters;

  // trivial bundles: base presentation and the letter offset of the
  // structure-group part inside the total algebra
  std::shared_ptr<Algebra> base_alg;
  std::vector<Element> base_d;
  int gamma_offset = -1;

  // Hopf fibration extras
  std::shared_ptr<HopfAlgebra> total_hopf;
  std::shared_ptr<Calculus> total_cal;
  std::shared_ptr<Envelope> total_env;

  // Dunkl parameter
  Scalar kappa;

  const Connection& connection(const std::string& n) const;
  bool is_trivial() const { return gamma_offset >= 0; }
};

std::shared_ptr<Example> build_trivial_u1(const PresentedDGA& base, int max_weight = 4);
std::shared_ptr<Example> build_trivial_u1();           // 2x2 matrix base
std::shared_ptr<Example> build_trivial_u1_point();     // one-point base
std::shared_ptr<Example> build_hopf_fibration(int max_weight = 3);
std::shared_ptr<Example> build_dunkl_rank1(const Scalar& kappa);

// Example registry for the CLI: named builders.
std::shared_ptr<Example> build_example(const std::string& name, const Scalar& kappa);
std::vector<std::string> example_names();

// Gauge potential of a connection on a trivial bundle: A(theta_i) in the base
// forms, with omega = omega_triv + (A x id) ad.
std::vector<Element> potential_decompose(const Example& ex, const Connection& omega);
// Field strength F = dA - m(A x A) delta, a table on the inv Gamma basis.
std::vector<Element> field_strength(const Example& ex, const std::vector<Element>& A);

// The text of the 2x2 matrix base presentation, also shipped under fixtures/.
extern const char* kMatrix2BaseText;

}  // namespace qb

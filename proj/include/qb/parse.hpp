#pragma once

#include "qb/hopf.hpp"

namespace qb {

// Expression grammar over a presented algebra: sums of scalar-weighted
// products of generator names, with ^ powers and parentheses. Scalars use
// integers, i and q. Products are juxtaposition.
Element parse_element(const Algebra* A, const std::string& text);

// Tensor expressions: sums of <expr> @ <expr> legs.
Tensor parse_tensor(const Algebra* A, const std::string& text);

// Presentation files: [algebra <name>] with generators/rules/order keys,
// optional [hopf], [corep <name>], [fodc] and [d] sections. Errors carry
// line/column diagnostics.
struct ParsedPresentation {
  std::shared_ptr<Algebra> algebra;
  std::vector<Element> d_gen;  // from the [d] section; empty when absent
  std::shared_ptr<HopfAlgebra> hopf;
  struct CorepDecl {
    std::string name;
    std::vector<std::vector<Element>> matrix;
  };
  std::vector<CorepDecl> coreps;
  bool has_fodc = false;
  std::vector<Element> ideal;
  std::vector<std::string> theta_names;
  std::vector<Element> preimages;
};

ParsedPresentation parse_presentation(const std::string& text);
ParsedPresentation parse_presentation_file(const std::string& path);

}  // namespace qb

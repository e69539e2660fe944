#pragma once

#include "qb/fodc.hpp"
#include "qb/presentations.hpp"

namespace qb {

// Letter-wise reinterpretation of an element into another algebra, shifting
// generator ids by offset. No normalization is applied.
Element reletter(const Algebra* target, const Element& e, int offset = 0);

// Quantum principal bundle with differential calculus: the total form
// algebra, its differential, the coaction table into Omega (x) Gamma^ and the
// registered corepresentation data.
class Bundle {
public:
  Bundle(std::string name, std::shared_ptr<HopfAlgebra> structure,
         std::shared_ptr<Calculus> cal, std::shared_ptr<Envelope> gamma,
         std::shared_ptr<Algebra> total_forms, std::vector<Element> d_table,
         std::vector<Tensor> psi_table, std::function<bool(const Element&)> base_decl);

  const std::string& name() const { return name_; }
  const HopfAlgebra* structure_hopf() const { return G_.get(); }
  const Calculus* structure_calculus() const { return cal_.get(); }
  const Envelope* gamma() const { return gammaw_.get(); }
  const Algebra* forms() const { return Om_.get(); }
  std::shared_ptr<Algebra> forms_ptr() const { return Om_; }

  Element d(const Element& w) const { return graded_derivative(d_, w); }
  Tensor psi(const Element& w) const;
  // differential of the graded tensor product Omega (x) Gamma^
  Tensor d_tensor(const Tensor& t) const;

  bool is_horizontal(const Element& w) const;
  bool is_base(const Element& w) const;
  bool base_declared(const Element& w) const { return base_decl_(w); }

  // Words over horizontal generators, irreducible, with bounded form degree
  // and length.
  std::vector<Element> horizontal_spanning(int max_degree, size_t max_len) const;

  // ---- registered corepresentation data (conditions of the finitely
  // generated sections setup) ----
  struct RepData {
    Corep corep;
    // X(k,i) = T^L_k(e_i), degree-0 elements of the total algebra
    std::vector<std::vector<Element>> X;
    std::vector<Scalar> Zdiag;                  // strictly positive diagonal
    std::vector<std::vector<Scalar>> C;         // n x n scalar matrix
    int dsize() const { return static_cast<int>(X.size()); }
    int n() const { return corep.dim(); }
    // W = Z X C^{-1}
    Element W(int k, int i) const;
  };
  void register_rep(const std::string& name, RepData data);
  const RepData& rep(const std::string& name) const;
  bool has_rep(const std::string& name) const { return reps_.count(name) > 0; }
  std::vector<std::string> rep_names() const;

  // expansion of a degree-0 structure-group word in corep coefficients
  void map_coefficient(const Word& g_word, const std::string& rep, int i, int j);
  struct CoeffRef {
    const RepData* rep;
    int i, j;
  };
  std::optional<CoeffRef> coefficient(const Word& g_word) const;

  struct Report {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
  };
  Report check_qpb(int samples = 20, unsigned seed = 3) const;

private:
  std::string name_;
  std::shared_ptr<HopfAlgebra> G_;
  std::shared_ptr<Calculus> cal_;
  std::shared_ptr<Envelope> gammaw_;
  std::shared_ptr<Algebra> Om_;
  std::vector<Element> d_;
  std::vector<Tensor> psi_;
  std::function<bool(const Element&)> base_decl_;
  std::map<std::string, RepData> reps_;
  std::map<Word, std::tuple<std::string, int, int>> coeff_;
};

// Principal connection: table on the inv Gamma basis with values in the
// degree-1 total forms.
class Connection {
public:
  Connection(const Bundle* b, std::string name, std::vector<Element> values);

  const Bundle* bundle() const { return b_; }
  const std::string& name() const { return name_; }
  const Element& value(int i) const { return omega_.at(static_cast<size_t>(i)); }
  Element apply(const InvForm& th) const;  // C-linear extension

  bool check() const;              // the defining equivariance
  Connection dual() const;         // omega-hat = * o omega o *
  bool is_real() const;
  bool is_imaginary() const;

  Connection operator+(const Connection& displacement_as_connection) = delete;
  Connection displaced(const std::string& name, const std::vector<Element>& lambda) const;

  // multiplicativity: omega vanishes on the degree-2 relation rows
  bool is_multiplicative() const;

  struct RegularityReport {
    bool regular = true;
    int degree_budget = 0;
    size_t words_checked = 0;
    std::string witness;  // first failing pair
  };
  RegularityReport is_regular(int degree_budget = 4, size_t max_len = 4) const;

  // curvature R(theta) = d omega(theta) - m (omega x omega) delta(theta)
  Element curvature(const InvForm& th) const;

  // regularity defect ell(theta, phi)
  Element ell(const InvForm& th, const Element& horizontal) const;

  Element cov_deriv(const Element& horizontal) const;
  Element dual_cov_deriv(const Element& horizontal) const;

private:
  const Bundle* b_;
  std::string name_;
  std::vector<Element> omega_;
};

// Bundle builders used by the examples and tests.

// Trivial bundle: total forms are base (x) Gamma^, coaction id (x) phi.
std::shared_ptr<Bundle> make_trivial_bundle(const std::string& name, const PresentedDGA& base,
                                            std::shared_ptr<HopfAlgebra> structure,
                                            std::shared_ptr<Calculus> cal);

// Quantum homogeneous bundle: total forms are the envelope of a
// left-covariant calculus on the total Hopf algebra; the structure group is a
// quotient via the Hopf projection table proj (one image per generator).
std::shared_ptr<Bundle> make_homogeneous_bundle(const std::string& name,
                                                std::shared_ptr<HopfAlgebra> total,
                                                std::shared_ptr<Envelope> total_forms,
                                                std::shared_ptr<HopfAlgebra> structure,
                                                std::shared_ptr<Calculus> cal,
                                                const std::vector<Element>& proj,
                                                std::function<bool(const Element&)> base_decl);

}  // namespace qb

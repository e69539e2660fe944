#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "qb/hopf.hpp"

namespace qb {

// Sparse row space with exact Gaussian elimination, keyed by leading word.
class RowSpace {
public:
  explicit RowSpace(const Algebra* A) : A_(A) {}
  // Returns true when the row was independent.
  bool insert(Element v);
  // Fully reduce v against the stored rows.
  Element reduce(Element v) const;
  size_t rank() const { return rows_.size(); }

private:
  std::optional<Word> leading(const Element& v) const;
  const Algebra* A_;
  std::vector<std::pair<Word, Element>> rows_;  // leading word, monic row
};

// Element of inv Gamma in the registered theta basis.
using InvForm = std::vector<Scalar>;

class Envelope;

// Bicovariant first-order differential *-calculus on a structure quantum
// group, given by right-ideal generators of R inside Ker eps and a chosen
// basis of inv Gamma with preimages under the quantum germs map.
class Calculus {
public:
  // bicovariant = false registers a left-covariant calculus: the ad table and
  // the extended coproduct are unavailable (a total-space calculus).
  Calculus(std::shared_ptr<HopfAlgebra> H, std::vector<Element> ideal_gens,
           std::vector<std::string> theta_names, std::vector<std::string> theta_display,
           std::vector<Element> preimages, int reduce_len = 6, bool bicovariant = true);

  bool bicovariant() const { return bicovariant_; }

  const HopfAlgebra* hopf() const { return H_.get(); }
  const Algebra* alg() const { return H_->alg(); }
  int dim() const { return static_cast<int>(preimage_.size()); }
  const std::string& theta_name(int i) const { return names_.at(static_cast<size_t>(i)); }
  const std::string& theta_display(int i) const { return display_.at(static_cast<size_t>(i)); }
  const Element& preimage(int i) const { return preimage_.at(static_cast<size_t>(i)); }
  const std::vector<Element>& ideal() const { return ideal_; }

  // Quantum germs map: reduction of g - eps(g)1 modulo R into the basis.
  InvForm pi(const Element& g) const;

  // Right module structure theta o g.
  InvForm circ(const InvForm& th, const Element& g) const;

  // ad(theta_i) = sum_j theta_j (x) ad_coef(i,j) in inv Gamma (x) G.
  const std::vector<std::vector<Element>>& ad_table() const { return ad_; }
  std::vector<Element> ad(const InvForm& th) const;  // G-coefficients per theta index

  // Star on inv Gamma: theta* computed from -pi(kappa(h)*).
  InvForm star(const InvForm& th) const;

  void set_delta(std::vector<std::vector<InvForm>> table) { delta_ = std::move(table); }
  bool has_delta() const { return !delta_.empty(); }
  // delta(theta) in inv Gamma (x) inv Gamma coordinates: out[j][k] coefficient
  // of theta_j (x) theta_k.
  std::vector<std::vector<Scalar>> delta(const InvForm& th) const;

  // Degree-2 relation rows of the envelope ideal: coordinates in the basis
  // theta_j (x) theta_k, index j*m + k.
  const std::vector<std::vector<Scalar>>& wedge_relations() const { return wedge_rows_; }

  struct Report {
    std::vector<std::string> failures;
    long kernel_words = 0, ideal_rank = 0;
    bool ok() const { return failures.empty(); }
  };
  Report check(const Envelope& env, int samples = 20, unsigned seed = 2) const;

  InvForm zero_form() const { return InvForm(static_cast<size_t>(dim()), Scalar::zero()); }
  std::string inv_str(const InvForm& th) const;

private:
  friend class Envelope;
  void build();
  InvForm reduce_to_basis(const Element& v, const char* what) const;

  std::shared_ptr<HopfAlgebra> H_;
  std::vector<Element> ideal_;
  std::vector<std::string> names_, display_;
  std::vector<Element> preimage_;
  int reduce_len_;
  bool bicovariant_ = true;

  RowSpace rows_;
  std::vector<std::pair<Word, Element>> basis_rows_;  // echelonized reduced preimages
  std::vector<std::vector<Scalar>> basis_coords_;     // expression in original basis
  std::vector<std::vector<Element>> ad_;
  std::vector<InvForm> star_;
  std::vector<std::vector<InvForm>> delta_;
  std::vector<std::vector<Scalar>> wedge_rows_;
  long kernel_words_ = 0;
  mutable std::map<Word, InvForm> pi_cache_;
  mutable std::mutex pi_mu_;
};

// Universal envelope as a presented graded differential *-algebra: the
// structure group letters plus one letter per inv Gamma basis element, with
// the module commutation rules and the degree-2 wedge relations. Carries the
// extended Hopf tables in degrees 0 and 1.
class Envelope {
public:
  explicit Envelope(std::shared_ptr<Calculus> cal);

  const Calculus* calculus() const { return cal_.get(); }
  const Algebra* alg() const { return A_.get(); }
  std::shared_ptr<Algebra> alg_ptr() const { return A_; }
  int theta_letter(int i) const { return theta0_ + i; }

  Element embed(const Element& g) const;      // G -> envelope
  Element project0(const Element& w) const;   // degree-0 part -> G
  Element inv(const InvForm& th) const;
  Element d(const Element& w) const;
  const std::vector<Element>& d_table() const { return d_gen_; }

  // Extended Hopf structure, valid in degrees 0 and 1.
  Tensor phi(const Element& w) const;
  Scalar eps(const Element& w) const;
  Element kappa(const Element& w) const;
  Tensor adjoint(const Element& w) const;  // graded Ad

  // Germs map into the envelope.
  Element pi(const Element& g) const { return inv(cal_->pi(g)); }

private:
  std::shared_ptr<Calculus> cal_;
  std::shared_ptr<Algebra> A_;
  int theta0_ = 0;
  std::vector<Element> d_gen_;
  std::vector<Tensor> phi_gen_;    // per envelope generator
  std::vector<Element> kappa_gen_;
};

// The three structure-group calculi plus the 3D calculus on SU_q(2).
std::shared_ptr<Calculus> make_u1_classical_calculus(std::shared_ptr<HopfAlgebra> H);
std::shared_ptr<Calculus> make_u1_q2_calculus(std::shared_ptr<HopfAlgebra> H);
std::shared_ptr<Calculus> make_z2_universal_calculus(std::shared_ptr<HopfAlgebra> H);
std::shared_ptr<Calculus> make_su_q2_3d_calculus(std::shared_ptr<HopfAlgebra> H);

}  // namespace qb

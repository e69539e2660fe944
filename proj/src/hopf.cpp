#include "qb/hopf.hpp"

#include <random>

#include "qb/presentations.hpp"

namespace qb {

void HopfAlgebra::set_tables(int gen, Tensor phi, Scalar eps, Element kappa) {
  phi_.at(static_cast<size_t>(gen)) = std::move(phi);
  eps_.at(static_cast<size_t>(gen)) = std::move(eps);
  kappa_.at(static_cast<size_t>(gen)) = std::move(kappa);
}

Tensor HopfAlgebra::coproduct(const Element& a) const {
  if (phi_.empty()) fail(Errc::NoHopfStructure, "no Hopf structure on " + A_->name());
  Tensor out({A_.get(), A_.get()});
  for (const auto& [w, c] : a.terms()) {
    Tensor acc({A_.get(), A_.get()});
    acc.add_product_term({A_->unit(), A_->unit()}, c);
    for (unsigned char l : w) acc = acc * phi_[l];
    out = out + acc;
  }
  return out;
}

Tensor HopfAlgebra::coproduct2(const Element& a) const {
  Tensor two = coproduct(a);
  return two.splice_leg(0, [this](const Element& x) { return coproduct(x); });
}

Scalar HopfAlgebra::counit(const Element& a) const {
  if (eps_.empty()) fail(Errc::NoHopfStructure, "no Hopf structure on " + A_->name());
  Scalar out = Scalar::zero();
  for (const auto& [w, c] : a.terms()) {
    Scalar v = c;
    for (unsigned char l : w) v *= eps_[l];
    out += v;
  }
  return out;
}

Element HopfAlgebra::antipode(const Element& a) const {
  if (kappa_.empty()) fail(Errc::NoHopfStructure, "no Hopf structure on " + A_->name());
  Element out = A_->zero();
  for (const auto& [w, c] : a.terms()) {
    Element acc = A_->unit() * c;
    for (unsigned char l : w) acc = kappa_[l] * acc;  // antimultiplicative
    out += acc;
  }
  return out;
}

Tensor HopfAlgebra::adjoint(const Element& a) const {
  Tensor three = coproduct2(a);  // h(1) x h(2) x h(3)
  Tensor out({A_.get(), A_.get()});
  for (const auto& [ws, c] : three.terms()) {
    Element mid = A_->monomial(ws[1]);
    Element side = antipode(A_->monomial(ws[0])) * A_->monomial(ws[2]);
    Tensor t({A_.get(), A_.get()});
    t.add_product_term({mid, side}, c);
    out = out + t;
  }
  return out;
}

Element HopfAlgebra::convolve(const std::function<Element(const Element&)>& f,
                              const std::function<Element(const Element&)>& g,
                              const Element& x) const {
  Tensor two = coproduct(x);
  Element out;
  bool first = true;
  for (const auto& [ws, c] : two.terms()) {
    Element v = f(A_->monomial(ws[0])) * g(A_->monomial(ws[1])) * c;
    if (first) {
      out = v;
      first = false;
    } else {
      out += v;
    }
  }
  return first ? A_->zero() : out;
}

static Element rand_elt(const Algebra& A, std::mt19937& rng, int max_len, int nterms) {
  std::uniform_int_distribution<int> len(0, max_len), g(0, A.num_generators() - 1), coef(-3, 3);
  Element e(&A);
  for (int t = 0; t < nterms; ++t) {
    Word w;
    int l = len(rng);
    for (int k = 0; k < l; ++k) w.push_back(static_cast<unsigned char>(g(rng)));
    e += A.normal_form(A.monomial(w, Scalar(coef(rng))));
  }
  return e;
}

HopfAlgebra::Report HopfAlgebra::check_axioms(int samples, unsigned seed) const {
  Report rep;
  std::mt19937 rng(seed);
  std::vector<Element> probes;
  for (int g = 0; g < A_->num_generators(); ++g) probes.push_back(A_->generator(g));
  for (int s = 0; s < samples; ++s) probes.push_back(rand_elt(*A_, rng, 4, 3));

  for (const Element& x : probes) {
    Tensor two = coproduct(x);
    // counit axioms
    Element left =
        two.contract_leg(0, [this](const Element& e) { return counit(e); }).as_element();
    Element right =
        two.contract_leg(1, [this](const Element& e) { return counit(e); }).as_element();
    if (!(left == x)) rep.failures.push_back("(eps x id) phi != id at " + x.str());
    if (!(right == x)) rep.failures.push_back("(id x eps) phi != id at " + x.str());
    // coassociativity
    Tensor a = two.splice_leg(0, [this](const Element& e) { return coproduct(e); });
    Tensor b = two.splice_leg(1, [this](const Element& e) { return coproduct(e); });
    if (!(a == b)) rep.failures.push_back("coassociativity fails at " + x.str());
    // antipode axiom
    Element m1 = A_->zero(), m2 = A_->zero();
    for (const auto& [ws, c] : two.terms()) {
      m1 += antipode(A_->monomial(ws[0])) * A_->monomial(ws[1]) * c;
      m2 += A_->monomial(ws[0]) * antipode(A_->monomial(ws[1])) * c;
    }
    Element target = A_->unit() * counit(x);
    if (!(m1 == target)) rep.failures.push_back("m(kappa x id) phi != eps 1 at " + x.str());
    if (!(m2 == target)) rep.failures.push_back("m(id x kappa) phi != eps 1 at " + x.str());
    // phi and eps are *-compatible; kappa is *-anti-compatible through itself
    Tensor starred({A_.get(), A_.get()});
    for (const auto& [ws, c] : two.terms())
      starred.add_product_term({A_->monomial(ws[0]).star(), A_->monomial(ws[1]).star()},
                               c.conj());
    if (!(starred == coproduct(x.star())))
      rep.failures.push_back("phi does not commute with * at " + x.str());
  }
  // multiplicativity of phi / eps on random pairs
  for (int s = 0; s < samples; ++s) {
    Element x = rand_elt(*A_, rng, 3, 2), y = rand_elt(*A_, rng, 3, 2);
    if (!(coproduct(x * y) == coproduct(x) * coproduct(y)))
      rep.failures.push_back("phi not multiplicative");
    if (!(counit(x * y) == counit(x) * counit(y)))
      rep.failures.push_back("eps not multiplicative");
    if (!(antipode(x * y) == antipode(y) * antipode(x)))
      rep.failures.push_back("kappa not antimultiplicative");
  }
  return rep;
}

Corep::Corep(const HopfAlgebra* H, std::string name, std::vector<std::vector<Element>> matrix)
    : H_(H), name_(std::move(name)), m_(std::move(matrix)) {
  for (const auto& row : m_)
    if (row.size() != m_.size()) fail(Errc::DimensionMismatch, "corep matrix not square");
}

std::vector<Element> Corep::apply(const std::vector<Scalar>& v) const {
  if (v.size() != m_.size()) fail(Errc::DimensionMismatch, "corep apply: wrong vector size");
  std::vector<Element> out(m_.size(), H_->alg()->zero());
  for (size_t j = 0; j < m_.size(); ++j)
    for (size_t i = 0; i < m_.size(); ++i) out[j] += m_[j][i] * v[i];
  return out;
}

Corep::Report Corep::check() const {
  Report rep;
  const Algebra* A = H_->alg();
  int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // comatrix identities
      Tensor expect({A, A});
      for (int k = 0; k < n; ++k) expect.add_product_term({entry(i, k), entry(k, j)}, Scalar::one());
      if (!(H_->coproduct(entry(i, j)) == expect))
        rep.failures.push_back(name_ + ": comatrix coproduct fails at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
      Scalar e = H_->counit(entry(i, j));
      if (!(e == (i == j ? Scalar::one() : Scalar::zero())))
        rep.failures.push_back(name_ + ": counit of entry not delta");
      // unitarity, column form: sum_k m*(k,i) m(k,j) = delta
      Element col = A->zero(), row = A->zero(), anti = A->zero();
      for (int k = 0; k < n; ++k) {
        col += entry(k, i).star() * entry(k, j);
        row += entry(i, k) * entry(j, k).star();
        anti += entry(i, k).star() * H_->antipode(entry(k, j).star());
      }
      Element target = (i == j) ? A->unit() : A->zero();
      // the column identity is also the invariance of the standard inner product
      if (!(col == target)) rep.failures.push_back(name_ + ": column unitarity fails");
      if (!(row == target)) rep.failures.push_back(name_ + ": row unitarity fails");
      if (!(anti == target)) rep.failures.push_back(name_ + ": antipode identity fails");
    }
  return rep;
}

bool intertwines(const Corep& alpha, const std::vector<Element>& values,
                 const std::function<Tensor(const Element&)>& target_coaction) {
  int n = alpha.dim();
  if (static_cast<int>(values.size()) != n)
    fail(Errc::DimensionMismatch, "intertwiner value list has wrong length");
  for (int i = 0; i < n; ++i) {
    Tensor lhs = target_coaction(values[static_cast<size_t>(i)]);
    Tensor rhs(lhs.factors());
    for (int j = 0; j < n; ++j)
      rhs.add_product_term({values[static_cast<size_t>(j)], alpha.entry(j, i)}, Scalar::one());
    if (!(lhs == rhs)) return false;
  }
  return true;
}

Character::Character(const HopfAlgebra* H, std::string name, std::vector<Scalar> gen_values)
    : H_(H), name_(std::move(name)), vals_(std::move(gen_values)) {
  const Algebra* A = H_->alg();
  if (static_cast<int>(vals_.size()) != A->num_generators())
    fail(Errc::DimensionMismatch, "character table size mismatch");
  // well-defined iff every rewrite rule is respected
  for (const auto& rule : A->rules()) {
    Scalar lhs = Scalar::one();
    for (unsigned char l : rule.lhs) lhs *= vals_[l];
    Scalar rhs = Scalar::zero();
    for (const auto& [w, c] : rule.rhs) {
      Scalar v = c;
      for (unsigned char l : w) v *= vals_[l];
      rhs += v;
    }
    if (!(lhs == rhs))
      fail(Errc::RepresentationMismatch,
           "character " + name_ + " does not respect rule " + A->word_str(rule.lhs));
  }
}

Scalar Character::operator()(const Element& a) const {
  Scalar out = Scalar::zero();
  for (const auto& [w, c] : a.terms()) {
    Scalar v = c;
    for (unsigned char l : w) v *= vals_[l];
    out += v;
  }
  return out;
}

Character Character::convolve(const Character& other) const {
  const Algebra* A = H_->alg();
  std::vector<Scalar> vals;
  for (int g = 0; g < A->num_generators(); ++g) {
    Tensor two = H_->coproduct(A->generator(g));
    Scalar v = Scalar::zero();
    for (const auto& [ws, c] : two.terms())
      v += c * (*this)(A->monomial(ws[0])) * other(A->monomial(ws[1]));
    vals.push_back(v);
  }
  return Character(H_, name_ + "*" + other.name_, std::move(vals));
}

Character Character::inverse() const {
  const Algebra* A = H_->alg();
  std::vector<Scalar> vals;
  for (int g = 0; g < A->num_generators(); ++g)
    vals.push_back((*this)(H_->antipode(A->generator(g))));
  return Character(H_, name_ + "^-1", std::move(vals));
}

std::shared_ptr<HopfAlgebra> make_u1_hopf() {
  auto A = make_u1_algebra();
  auto H = std::make_shared<HopfAlgebra>(A);
  Element z = A->generator(0), zs = A->generator(1);
  H->set_tables(0, Tensor::of(z, z), Scalar::one(), zs);
  H->set_tables(1, Tensor::of(zs, zs), Scalar::one(), z);
  return H;
}

std::shared_ptr<HopfAlgebra> make_su_q2_hopf() {
  auto A = make_su_q2_algebra();
  auto H = std::make_shared<HopfAlgebra>(A);
  Element a = A->generator(0), as = A->generator(1), c = A->generator(2), cs = A->generator(3);
  Scalar q = Scalar::q();
  H->set_tables(0, Tensor::of(a, a) - Tensor::of(cs, c) * q, Scalar::one(), as);
  H->set_tables(1, Tensor::of(as, as) - Tensor::of(c, cs) * q, Scalar::one(), a);
  H->set_tables(2, Tensor::of(c, a) + Tensor::of(as, c), Scalar::zero(), -q * c);
  H->set_tables(3, Tensor::of(cs, as) + Tensor::of(a, cs), Scalar::zero(), -q.inverse() * cs);
  return H;
}

std::shared_ptr<HopfAlgebra> make_z2_hopf() {
  auto A = make_z2_algebra();
  auto H = std::make_shared<HopfAlgebra>(A);
  Element t = A->generator(0);
  H->set_tables(0, Tensor::of(t, t), Scalar::one(), t);
  return H;
}

}  // namespace qb

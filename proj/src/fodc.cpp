#include "qb/fodc.hpp"

#include <mutex>
#include <random>

#include "qb/presentations.hpp"

namespace qb {

std::optional<Word> RowSpace::leading(const Element& v) const {
  std::optional<Word> best;
  for (const auto& [w, c] : v.terms())
    if (!best || A_->cmp_words(w, *best) > 0) best = w;
  return v.is_zero() ? std::nullopt : best;
}

Element RowSpace::reduce(Element v) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [lead, row] : rows_) {
      auto it = v.terms().find(lead);
      if (it == v.terms().end()) continue;
      v -= row * it->second;
      changed = true;
    }
  }
  return v;
}

bool RowSpace::insert(Element v) {
  v = reduce(std::move(v));
  auto lead = leading(v);
  if (!lead) return false;
  Scalar inv = v.terms().at(*lead).inverse();
  rows_.emplace_back(*lead, v * inv);
  return true;
}

Calculus::Calculus(std::shared_ptr<HopfAlgebra> H, std::vector<Element> ideal_gens,
                   std::vector<std::string> theta_names, std::vector<std::string> theta_display,
                   std::vector<Element> preimages, int reduce_len, bool bicovariant)
    : H_(std::move(H)),
      ideal_(std::move(ideal_gens)),
      names_(std::move(theta_names)),
      display_(std::move(theta_display)),
      preimage_(std::move(preimages)),
      reduce_len_(reduce_len),
      bicovariant_(bicovariant),
      rows_(H_->alg()) {
  build();
}

void Calculus::build() {
  const Algebra* A = H_->alg();
  auto words = A->irreducible_words(0, static_cast<size_t>(reduce_len_));
  kernel_words_ = static_cast<long>(words.size()) - 1;
  for (const auto& r : ideal_) {
    Scalar e = H_->counit(r);
    if (!e.is_zero()) fail(Errc::Internal, "ideal generator not in Ker eps");
    for (const auto& w : words) rows_.insert(A->mul(r, A->monomial(w)));
  }
  // echelonize the reduced preimages with coordinate bookkeeping
  int m = dim();
  for (int i = 0; i < m; ++i) {
    Element v = preimage_[static_cast<size_t>(i)];
    v = A->normal_form(v) - A->unit() * H_->counit(v);
    v = rows_.reduce(v);
    std::vector<Scalar> coords(static_cast<size_t>(m), Scalar::zero());
    coords[static_cast<size_t>(i)] = Scalar::one();
    // full reduction against stored basis rows, tracking coordinates
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t k = 0; k < basis_rows_.size(); ++k) {
        auto it = v.terms().find(basis_rows_[k].first);
        if (it == v.terms().end()) continue;
        Scalar c = it->second;
        v -= basis_rows_[k].second * c;
        for (int j = 0; j < m; ++j)
          coords[static_cast<size_t>(j)] -= c * basis_coords_[k][static_cast<size_t>(j)];
        changed = true;
      }
    }
    if (v.is_zero())
      fail(Errc::Internal, "inv Gamma preimages are dependent modulo the ideal");
    std::optional<Word> lead;
    for (const auto& [w, c] : v.terms())
      if (!lead || A->cmp_words(w, *lead) > 0) lead = w;
    Scalar inv = v.terms().at(*lead).inverse();
    v = v * inv;
    for (auto& c : coords) c *= inv;
    // solve: reduced(preimage_i) = sum over stored rows; we store
    // row = combination with coords meaning "this row equals sum_j coords[j] * pi-basis j"
    basis_rows_.emplace_back(*lead, std::move(v));
    basis_coords_.push_back(std::move(coords));
  }

  // ad and star tables
  ad_.assign(static_cast<size_t>(m), std::vector<Element>());
  for (int i = 0; i < m && bicovariant_; ++i) {
    ad_[static_cast<size_t>(i)].assign(static_cast<size_t>(m), A->zero());
    Tensor adt = H_->adjoint(preimage_[static_cast<size_t>(i)]);
    for (const auto& [ws, c] : adt.terms()) {
      InvForm p = pi(A->monomial(ws[0]));
      for (int j = 0; j < m; ++j)
        ad_[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            A->monomial(ws[1]) * (c * p[static_cast<size_t>(j)]);
    }
  }
  for (int i = 0; i < m; ++i) {
    Element h = preimage_[static_cast<size_t>(i)];
    star_.push_back(pi(H_->antipode(h).star()));
    for (auto& c : star_.back()) c = -c;
  }

  // degree-2 relation rows of the envelope ideal, echelonized over j*m+k
  auto wedge_words = A->irreducible_words(0, 4);
  std::vector<std::vector<Scalar>> rows;
  auto insert_row = [&](std::vector<Scalar> row) {
    for (const auto& r : rows) {
      int pivot = -1;
      for (int k = static_cast<int>(r.size()) - 1; k >= 0; --k)
        if (!r[static_cast<size_t>(k)].is_zero()) {
          pivot = k;
          break;
        }
      if (pivot < 0) continue;
      if (!row[static_cast<size_t>(pivot)].is_zero()) {
        Scalar c = row[static_cast<size_t>(pivot)] / r[static_cast<size_t>(pivot)];
        for (size_t k = 0; k < row.size(); ++k) row[k] -= c * r[k];
      }
    }
    bool nonzero = false;
    for (const auto& c : row)
      if (!c.is_zero()) nonzero = true;
    if (nonzero) rows.push_back(std::move(row));
  };
  for (const auto& r : ideal_) {
    for (const auto& w : wedge_words) {
      Element x = H_->alg()->mul(r, A->monomial(w));
      Tensor two = H_->coproduct(x);
      std::vector<Scalar> row(static_cast<size_t>(m * m), Scalar::zero());
      bool any = false;
      for (const auto& [ws, c] : two.terms()) {
        InvForm p0 = pi(A->monomial(ws[0]));
        InvForm p1 = pi(A->monomial(ws[1]));
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            Scalar v = c * p0[static_cast<size_t>(j)] * p1[static_cast<size_t>(k)];
            if (!v.is_zero()) {
              row[static_cast<size_t>(j * m + k)] += v;
              any = true;
            }
          }
      }
      if (any) insert_row(std::move(row));
      if (rows.size() == static_cast<size_t>(m * m)) break;
    }
  }
  // normalize pivots to 1
  for (auto& r : rows) {
    int pivot = -1;
    for (int k = static_cast<int>(r.size()) - 1; k >= 0; --k)
      if (!r[static_cast<size_t>(k)].is_zero()) {
        pivot = k;
        break;
      }
    if (pivot < 0) continue;
    Scalar inv = r[static_cast<size_t>(pivot)].inverse();
    for (auto& c : r) c *= inv;
    wedge_rows_.push_back(r);
  }
}

InvForm Calculus::reduce_to_basis(const Element& v0, const char* what) const {
  const Algebra* A = H_->alg();
  Element v = rows_.reduce(v0);
  int m = dim();
  InvForm out(static_cast<size_t>(m), Scalar::zero());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < basis_rows_.size(); ++k) {
      auto it = v.terms().find(basis_rows_[k].first);
      if (it == v.terms().end()) continue;
      Scalar c = it->second;
      v -= basis_rows_[k].second * c;
      for (int j = 0; j < m; ++j)
        out[static_cast<size_t>(j)] += c * basis_coords_[k][static_cast<size_t>(j)];
      changed = true;
    }
  }
  if (!v.is_zero())
    fail(Errc::Internal, std::string("germs reduction left a residue (") + what + "): " +
                             v.str() + " in " + A->name());
  return out;
}

InvForm Calculus::pi(const Element& g) const {
  const Algebra* A = H_->alg();
  Element v = A->normal_form(g);
  InvForm out = zero_form();
  for (const auto& [w, c] : v.terms()) {
    if (w.empty()) continue;  // pi kills the unit
    InvForm pw;
    {
      std::lock_guard<std::mutex> lock(pi_mu_);
      auto it = pi_cache_.find(w);
      if (it != pi_cache_.end()) pw = it->second;
    }
    if (pw.empty()) {
      Element mono = A->monomial(w);
      Element ker = mono - A->unit() * H_->counit(mono);
      pw = reduce_to_basis(ker, "pi");
      std::lock_guard<std::mutex> lock(pi_mu_);
      pi_cache_[w] = pw;
    }
    for (int j = 0; j < dim(); ++j) out[static_cast<size_t>(j)] += c * pw[static_cast<size_t>(j)];
  }
  return out;
}

InvForm Calculus::circ(const InvForm& th, const Element& g) const {
  InvForm out = zero_form();
  for (int i = 0; i < dim(); ++i) {
    if (th[static_cast<size_t>(i)].is_zero()) continue;
    const Element& h = preimage_[static_cast<size_t>(i)];
    InvForm v = pi(h * g);
    InvForm w = pi(g);
    Scalar eh = H_->counit(h);
    for (int j = 0; j < dim(); ++j)
      out[static_cast<size_t>(j)] +=
          th[static_cast<size_t>(i)] * (v[static_cast<size_t>(j)] - eh * w[static_cast<size_t>(j)]);
  }
  return out;
}

std::vector<Element> Calculus::ad(const InvForm& th) const {
  if (!bicovariant_)
    fail(Errc::Internal, "ad is only defined for bicovariant calculi");
  std::vector<Element> out(static_cast<size_t>(dim()), H_->alg()->zero());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      out[static_cast<size_t>(j)] +=
          ad_[static_cast<size_t>(i)][static_cast<size_t>(j)] * th[static_cast<size_t>(i)];
  return out;
}

InvForm Calculus::star(const InvForm& th) const {
  InvForm out = zero_form();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      out[static_cast<size_t>(j)] +=
          th[static_cast<size_t>(i)].conj() * star_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return out;
}

std::vector<std::vector<Scalar>> Calculus::delta(const InvForm& th) const {
  if (!has_delta()) fail(Errc::MissingDelta, "no embedded differential registered");
  int m = dim();
  std::vector<std::vector<Scalar>> out(static_cast<size_t>(m),
                                       std::vector<Scalar>(static_cast<size_t>(m), Scalar::zero()));
  for (int i = 0; i < m; ++i) {
    if (th[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out[static_cast<size_t>(j)][static_cast<size_t>(k)] +=
            th[static_cast<size_t>(i)] *
            delta_[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
  }
  return out;
}

std::string Calculus::inv_str(const InvForm& th) const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    const Scalar& c = th[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    std::string term = (cs == "1") ? display_[static_cast<size_t>(i)]
                                   : "(" + cs + ") " + display_[static_cast<size_t>(i)];
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

// ---- envelope ----

Envelope::Envelope(std::shared_ptr<Calculus> cal) : cal_(std::move(cal)) {
  const Algebra* G = cal_->alg();
  const HopfAlgebra* H = cal_->hopf();
  A_ = std::make_shared<Algebra>(G->name() + "^");
  for (int g = 0; g < G->num_generators(); ++g) {
    const Generator& gen = G->gen(g);
    A_->add_generator(gen.name, gen.degree, gen.weight, gen.display);
  }
  theta0_ = G->num_generators();
  int m = cal_->dim();
  for (int i = 0; i < m; ++i)
    A_->add_generator(cal_->theta_name(i), 1, 1, cal_->theta_display(i));
  for (int g = 0; g < G->num_generators(); ++g) {
    const Generator& gen = G->gen(g);
    A_->set_star(g, gen.star, gen.star_coef);
  }
  // theta stars must be monomial
  for (int i = 0; i < m; ++i) {
    InvForm e = cal_->zero_form();
    e[static_cast<size_t>(i)] = Scalar::one();
    InvForm st = cal_->star(e);
    int partner = -1;
    Scalar coef;
    for (int j = 0; j < m; ++j) {
      if (st[static_cast<size_t>(j)].is_zero()) continue;
      if (partner >= 0)
        fail(Errc::StarMismatch, "inv Gamma star of " + cal_->theta_name(i) + " is not monomial");
      partner = j;
      coef = st[static_cast<size_t>(j)];
    }
    if (partner < 0) fail(Errc::StarMismatch, "inv Gamma star vanished");
    A_->set_star(theta0_ + i, theta0_ + partner, coef);
  }
  for (const auto& rule : G->rules()) {
    Element rhs(A_.get());
    for (const auto& [w, c] : rule.rhs) rhs.add_term(w, c);
    A_->add_rule(rule.lhs, rhs);
  }
  // theta g = g(1) (theta o g(2))
  for (int i = 0; i < m; ++i) {
    InvForm e = cal_->zero_form();
    e[static_cast<size_t>(i)] = Scalar::one();
    for (int g = 0; g < G->num_generators(); ++g) {
      Tensor two = H->coproduct(G->generator(g));
      Element rhs(A_.get());
      for (const auto& [ws, c] : two.terms()) {
        InvForm th = cal_->circ(e, G->monomial(ws[1]));
        for (int j = 0; j < m; ++j) {
          if (th[static_cast<size_t>(j)].is_zero()) continue;
          Word w = ws[0];
          w.push_back(static_cast<unsigned char>(theta0_ + j));
          rhs.add_term(w, c * th[static_cast<size_t>(j)]);
        }
      }
      Word lhs;
      lhs.push_back(static_cast<unsigned char>(theta0_ + i));
      lhs.push_back(static_cast<unsigned char>(g));
      A_->add_rule(lhs, rhs);
    }
  }
  // degree-2 wedge relations
  for (const auto& row : cal_->wedge_relations()) {
    int pivot = -1;
    for (int k = static_cast<int>(row.size()) - 1; k >= 0; --k)
      if (!row[static_cast<size_t>(k)].is_zero()) {
        pivot = k;
        break;
      }
    if (pivot < 0) continue;
    Word lhs;
    lhs.push_back(static_cast<unsigned char>(theta0_ + pivot / m));
    lhs.push_back(static_cast<unsigned char>(theta0_ + pivot % m));
    Element rhs(A_.get());
    for (int k = 0; k < pivot; ++k) {
      if (row[static_cast<size_t>(k)].is_zero()) continue;
      Word w;
      w.push_back(static_cast<unsigned char>(theta0_ + k / m));
      w.push_back(static_cast<unsigned char>(theta0_ + k % m));
      rhs.add_term(w, -row[static_cast<size_t>(k)]);
    }
    A_->add_rule(lhs, rhs);
  }
  A_->finalize();

  // differential: d g = g(1) pi(g(2)) ; d theta_i = -(pi x pi) phi(h_i)
  d_gen_.assign(static_cast<size_t>(A_->num_generators()), A_->zero());
  for (int g = 0; g < G->num_generators(); ++g) {
    Tensor two = H->coproduct(G->generator(g));
    Element v(A_.get());
    for (const auto& [ws, c] : two.terms()) {
      InvForm th = cal_->pi(G->monomial(ws[1]));
      for (int j = 0; j < m; ++j) {
        if (th[static_cast<size_t>(j)].is_zero()) continue;
        Word w = ws[0];
        w.push_back(static_cast<unsigned char>(theta0_ + j));
        v.add_term(w, c * th[static_cast<size_t>(j)]);
      }
    }
    d_gen_[static_cast<size_t>(g)] = A_->normal_form(v);
  }
  for (int i = 0; i < m; ++i) {
    Tensor two = H->coproduct(cal_->preimage(i));
    Element v(A_.get());
    for (const auto& [ws, c] : two.terms()) {
      InvForm p0 = cal_->pi(G->monomial(ws[0]));
      InvForm p1 = cal_->pi(G->monomial(ws[1]));
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          Scalar coef = c * p0[static_cast<size_t>(j)] * p1[static_cast<size_t>(k)];
          if (coef.is_zero()) continue;
          Word w;
          w.push_back(static_cast<unsigned char>(theta0_ + j));
          w.push_back(static_cast<unsigned char>(theta0_ + k));
          v.add_term(w, -coef);
        }
    }
    d_gen_[static_cast<size_t>(theta0_ + i)] = A_->normal_form(v);
  }

  // extended Hopf tables in degrees 0 and 1
  phi_gen_.assign(static_cast<size_t>(A_->num_generators()), Tensor({A_.get(), A_.get()}));
  kappa_gen_.assign(static_cast<size_t>(A_->num_generators()), A_->zero());
  for (int g = 0; g < G->num_generators(); ++g) {
    Tensor two = H->coproduct(G->generator(g));
    Tensor t({A_.get(), A_.get()});
    for (const auto& [ws, c] : two.terms()) t.add_term({ws[0], ws[1]}, c);
    phi_gen_[static_cast<size_t>(g)] = std::move(t);
    kappa_gen_[static_cast<size_t>(g)] = embed(H->antipode(G->generator(g)));
  }
  for (int i = 0; i < m && cal_->bicovariant(); ++i) {
    Tensor t({A_.get(), A_.get()});
    for (int j = 0; j < m; ++j) {
      const Element& coef = cal_->ad_table()[static_cast<size_t>(i)][static_cast<size_t>(j)];
      for (const auto& [w, c] : coef.terms()) {
        Word th;
        th.push_back(static_cast<unsigned char>(theta0_ + j));
        t.add_term({th, w}, c);
      }
    }
    Word th;
    th.push_back(static_cast<unsigned char>(theta0_ + i));
    t.add_term({Word(), th}, Scalar::one());
    phi_gen_[static_cast<size_t>(theta0_ + i)] = std::move(t);

    // kappa(pi(h)) = - pi(h(2)) kappa(h(3)) kappa^2(h(1))
    Tensor three = H->coproduct2(cal_->preimage(i));
    Element v(A_.get());
    for (const auto& [ws, c] : three.terms()) {
      Element tail = H->antipode(G->monomial(ws[2])) * H->antipode(H->antipode(G->monomial(ws[0])));
      Element term = inv(cal_->pi(G->monomial(ws[1]))) * embed(tail) * (-c);
      v += term;
    }
    kappa_gen_[static_cast<size_t>(theta0_ + i)] = v;
  }
}

Element Envelope::embed(const Element& g) const {
  Element out(A_.get());
  for (const auto& [w, c] : g.terms()) out.add_term(w, c);
  return out;
}

Element Envelope::project0(const Element& w) const {
  Element out(cal_->alg());
  for (const auto& [word, c] : w.terms()) {
    if (A_->word_degree(word) != 0) continue;
    for (unsigned char l : word)
      if (l >= theta0_) fail(Errc::Internal, "degree-0 word contains a form letter");
    out.add_term(word, c);
  }
  return out;
}

Element Envelope::inv(const InvForm& th) const {
  Element out(A_.get());
  for (int i = 0; i < cal_->dim(); ++i) {
    if (th[static_cast<size_t>(i)].is_zero()) continue;
    Word w;
    w.push_back(static_cast<unsigned char>(theta0_ + i));
    out.add_term(w, th[static_cast<size_t>(i)]);
  }
  return out;
}

Element Envelope::d(const Element& w) const { return graded_derivative(d_gen_, w); }

Tensor Envelope::phi(const Element& w) const {
  if (!cal_->bicovariant())
    fail(Errc::NoHopfStructure, "no extended Hopf structure on a left-covariant envelope");
  Tensor out({A_.get(), A_.get()});
  for (const auto& [word, c] : w.terms()) {
    Tensor acc({A_.get(), A_.get()});
    acc.add_product_term({A_->unit(), A_->unit()}, c);
    for (unsigned char l : word) acc = acc * phi_gen_[l];
    out = out + acc;
  }
  return out;
}

Scalar Envelope::eps(const Element& w) const {
  return cal_->hopf()->counit(project0(w));
}

Element Envelope::kappa(const Element& w) const {
  if (!cal_->bicovariant())
    fail(Errc::NoHopfStructure, "no extended Hopf structure on a left-covariant envelope");
  Element out = A_->zero();
  for (const auto& [word, c] : w.terms()) {
    // graded antimultiplicativity: reversing k odd letters costs (-1)^{k(k-1)/2}
    int odd = 0;
    for (unsigned char l : word)
      if (A_->gen(l).degree % 2 != 0) ++odd;
    Scalar sign = ((odd * (odd - 1) / 2) % 2 != 0) ? -Scalar::one() : Scalar::one();
    Element acc = A_->unit() * (c * sign);
    for (unsigned char l : word) acc = kappa_gen_[l] * acc;
    out += acc;
  }
  return out;
}

Tensor Envelope::adjoint(const Element& w) const {
  Tensor two = phi(w);
  Tensor three = two.splice_leg(0, [this](const Element& x) { return phi(x); });
  Tensor out({A_.get(), A_.get()});
  for (const auto& [ws, c] : three.terms()) {
    int d0 = A_->word_degree(ws[0]);
    int d1 = A_->word_degree(ws[1]);
    Scalar coef = (d0 * d1 % 2 != 0) ? -c : c;
    Element side = kappa(A_->monomial(ws[0])) * A_->monomial(ws[2]);
    Tensor t({A_.get(), A_.get()});
    t.add_product_term({A_->monomial(ws[1]), side}, coef);
    out = out + t;
  }
  return out;
}

// ---- calculus check ----

static Element rand_g(const Algebra& A, std::mt19937& rng, int max_len, int nterms) {
  std::uniform_int_distribution<int> len(0, max_len), g(0, A.num_generators() - 1), coef(-2, 2);
  Element e(&A);
  for (int t = 0; t < nterms; ++t) {
    Word w;
    int l = len(rng);
    for (int k = 0; k < l; ++k) w.push_back(static_cast<unsigned char>(g(rng)));
    e += A.normal_form(A.monomial(w, Scalar(coef(rng))));
  }
  return e;
}

Calculus::Report Calculus::check(const Envelope& env, int samples, unsigned seed) const {
  Report rep;
  const Algebra* A = H_->alg();
  rep.kernel_words = kernel_words_;
  rep.ideal_rank = static_cast<long>(rows_.rank());

  // Ker pi = R + C1 by dimension count on the truncated word space: the rank
  // of the ideal rows plus dim inv Gamma must exhaust Ker eps.
  {
    RowSpace bounded(A);
    auto words = A->irreducible_words(0, static_cast<size_t>(reduce_len_));
    for (const auto& r : ideal_)
      for (const auto& w : words) {
        Element row = A->mul(r, A->monomial(w));
        bool in_bounds = true;
        for (const auto& [rw, rc] : row.terms())
          if (static_cast<int>(rw.size()) > reduce_len_) in_bounds = false;
        if (in_bounds) bounded.insert(std::move(row));
      }
    long expect = kernel_words_ - dim();
    if (static_cast<long>(bounded.rank()) != expect)
      rep.failures.push_back("kernel dimension count: rank " + std::to_string(bounded.rank()) +
                             " != " + std::to_string(expect));
  }

  std::mt19937 rng(seed);
  std::vector<Element> probes;
  for (int g = 0; g < A->num_generators(); ++g) probes.push_back(A->generator(g));
  for (int s = 0; s < samples; ++s) probes.push_back(rand_g(*A, rng, 3, 2));

  for (const Element& g : probes) {
    // pi(g)* = -pi(kappa(g)*)
    InvForm lhs = star(pi(g));
    InvForm rhs = pi(H_->antipode(g).star());
    for (auto& c : rhs) c = -c;
    if (lhs != rhs) rep.failures.push_back("pi(g)* != -pi(kappa(g)*) at " + g.str());
    // ad o pi = (pi x id) Ad, only meaningful when the ideal is Ad-invariant
    if (bicovariant_) {
      std::vector<Element> lhs_ad = ad(pi(g));
      std::vector<Element> rhs_ad(static_cast<size_t>(dim()), A->zero());
      Tensor adt = H_->adjoint(g);
      for (const auto& [ws, c] : adt.terms()) {
        InvForm p = pi(A->monomial(ws[0]));
        for (int j = 0; j < dim(); ++j)
          rhs_ad[static_cast<size_t>(j)] += A->monomial(ws[1]) * (c * p[static_cast<size_t>(j)]);
      }
      if (lhs_ad != rhs_ad) rep.failures.push_back("ad o pi != (pi x id) Ad at " + g.str());
    }
    // d pi(g) = -pi(g(1)) pi(g(2)) inside the envelope
    Element dpi = env.d(env.inv(pi(g)));
    Element prod(env.alg());
    Tensor two = H_->coproduct(g);
    for (const auto& [ws, c] : two.terms())
      prod += env.inv(pi(A->monomial(ws[0]))) * env.inv(pi(A->monomial(ws[1]))) * c;
    if (!(dpi == -prod)) rep.failures.push_back("d pi != -pi pi at " + g.str());
    // dg = g(1) pi(g(2))
    Element dg = env.d(env.embed(g));
    Element dg2(env.alg());
    for (const auto& [ws, c] : two.terms())
      dg2 += env.embed(A->monomial(ws[0])) * env.inv(pi(A->monomial(ws[1]))) * c;
    if (!(dg == dg2)) rep.failures.push_back("dg != g(1) pi(g(2)) at " + g.str());
  }
  // module law and star compatibility of circ
  for (int i = 0; i < dim(); ++i) {
    InvForm e = zero_form();
    e[static_cast<size_t>(i)] = Scalar::one();
    for (int s = 0; s < samples; ++s) {
      Element g1 = rand_g(*A, rng, 2, 2), g2 = rand_g(*A, rng, 2, 2);
      InvForm a = circ(circ(e, g1), g2);
      InvForm b = circ(e, g1 * g2);
      if (a != b) rep.failures.push_back("circ module law fails");
    }
    for (int g = 0; g < A->num_generators(); ++g) {
      InvForm lhs = star(circ(e, A->generator(g)));
      InvForm rhs = circ(star(e), H_->antipode(A->generator(g)).star());
      if (lhs != rhs) rep.failures.push_back("(theta o g)* != theta* o kappa(g)*");
    }
  }
  // envelope sanity: d^2 = 0 on generators, Leibniz and star samples
  for (int g = 0; g < env.alg()->num_generators(); ++g) {
    if (!env.d(env.d(env.alg()->generator(g))).is_zero())
      rep.failures.push_back("envelope d^2 != 0 on " + env.alg()->gen(g).name);
    Element gen = env.alg()->generator(g);
    if (!(env.d(gen.star()) == env.d(gen).star()))
      rep.failures.push_back("envelope d* != *d on " + env.alg()->gen(g).name);
  }
  // embedded differential: m(delta(pi(g))) = d(pi(g)) in the envelope
  if (has_delta()) {
    for (const Element& g : probes) {
      InvForm p = pi(g);
      auto mat = delta(p);
      Element lhs(env.alg());
      for (int j = 0; j < dim(); ++j)
        for (int k = 0; k < dim(); ++k) {
          InvForm ej = zero_form(), ek = zero_form();
          ej[static_cast<size_t>(j)] = Scalar::one();
          ek[static_cast<size_t>(k)] = Scalar::one();
          lhs += env.inv(ej) * env.inv(ek) * mat[static_cast<size_t>(j)][static_cast<size_t>(k)];
        }
      if (!(lhs == env.d(env.inv(p))))
        rep.failures.push_back("m(delta) != d on inv Gamma at " + g.str());
    }
  }
  return rep;
}

// ---- stock calculi ----

std::shared_ptr<Calculus> make_u1_classical_calculus(std::shared_ptr<HopfAlgebra> H) {
  const Algebra* A = H->alg();
  Element z = A->generator(0), zs = A->generator(1), one = A->unit();
  Element kz = z - one, kzs = zs - one;
  std::vector<Element> ideal = {kz * kz, kz * kzs, kzs * kz, kzs * kzs};
  auto cal = std::make_shared<Calculus>(H, ideal, std::vector<std::string>{"vs"},
                                        std::vector<std::string>{"ς"},
                                        std::vector<Element>{z}, 6);
  InvForm d(1, Scalar::one());
  cal->set_delta({{{d}}});  // delta(vs) = vs x vs
  return cal;
}

std::shared_ptr<Calculus> make_u1_q2_calculus(std::shared_ptr<HopfAlgebra> H) {
  const Algebra* A = H->alg();
  Element z = A->generator(0), zs = A->generator(1), one = A->unit();
  Scalar q2 = Scalar::q(2);
  std::vector<Element> ideal = {zs + q2 * z - (Scalar::one() + q2) * one};
  auto cal = std::make_shared<Calculus>(H, ideal, std::vector<std::string>{"vs"},
                                        std::vector<std::string>{"ς"},
                                        std::vector<Element>{z}, 6);
  InvForm d(1, Scalar::one());
  cal->set_delta({{{d}}});
  return cal;
}

std::shared_ptr<Calculus> make_z2_universal_calculus(std::shared_ptr<HopfAlgebra> H) {
  const Algebra* A = H->alg();
  auto cal = std::make_shared<Calculus>(H, std::vector<Element>{},
                                        std::vector<std::string>{"th"},
                                        std::vector<std::string>{"θ"},
                                        std::vector<Element>{A->generator(0)}, 6);
  InvForm d(1, -Scalar::one());
  cal->set_delta({{{d}}});  // delta(th) = -th x th, the embedded lift of d
  return cal;
}

std::shared_ptr<Calculus> make_su_q2_3d_calculus(std::shared_ptr<HopfAlgebra> H) {
  const Algebra* A = H->alg();
  Element a = A->generator(0), as = A->generator(1), c = A->generator(2), cs = A->generator(3);
  Element one = A->unit();
  Scalar q2 = Scalar::q(2);
  std::vector<Element> ideal = {
      as + q2 * a - (Scalar::one() + q2) * one,
      c * c,
      cs * cs,
      c * cs,
      (a - one) * c,
      (a - one) * cs,
  };
  return std::make_shared<Calculus>(
      H, ideal, std::vector<std::string>{"eta0", "etaP", "etaM"},
      std::vector<std::string>{"η₀", "η₊", "η₋"},
      std::vector<Element>{a, c, cs}, 5, /*bicovariant=*/false);
}

}  // namespace qb

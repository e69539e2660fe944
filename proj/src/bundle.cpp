#include "qb/bundle.hpp"

#include <random>

namespace qb {

Element reletter(const Algebra* target, const Element& e, int offset) {
  Element out(target);
  for (const auto& [w, c] : e.terms()) {
    Word nw;
    nw.reserve(w.size());
    for (unsigned char l : w) nw.push_back(static_cast<unsigned char>(l + offset));
    out.add_term(nw, c);
  }
  return out;
}

Bundle::Bundle(std::string name, std::shared_ptr<HopfAlgebra> structure,
               std::shared_ptr<Calculus> cal, std::shared_ptr<Envelope> gamma,
               std::shared_ptr<Algebra> total_forms, std::vector<Element> d_table,
               std::vector<Tensor> psi_table, std::function<bool(const Element&)> base_decl)
    : name_(std::move(name)),
      G_(std::move(structure)),
      cal_(std::move(cal)),
      gammaw_(std::move(gamma)),
      Om_(std::move(total_forms)),
      d_(std::move(d_table)),
      psi_(std::move(psi_table)),
      base_decl_(std::move(base_decl)) {}

Tensor Bundle::psi(const Element& w) const {
  Tensor out({Om_.get(), gammaw_->alg()});
  for (const auto& [word, c] : w.terms()) {
    Tensor acc({Om_.get(), gammaw_->alg()});
    acc.add_product_term({Om_->unit(), gammaw_->alg()->unit()}, c);
    for (unsigned char l : word) acc = acc * psi_[l];
    out = out + acc;
  }
  return out;
}

Tensor Bundle::d_tensor(const Tensor& t) const {
  Tensor out(t.factors());
  for (const auto& [ws, c] : t.terms()) {
    Element d0 = d(Om_->monomial(ws[0]));
    Element d1 = gammaw_->d(gammaw_->alg()->monomial(ws[1]));
    int k = Om_->word_degree(ws[0]);
    for (const auto& [w, cc] : d0.terms()) out.add_term({w, ws[1]}, c * cc);
    Scalar sgn = (k % 2 == 0) ? c : -c;
    for (const auto& [w, cc] : d1.terms()) out.add_term({ws[0], w}, sgn * cc);
  }
  return out;
}

bool Bundle::is_horizontal(const Element& w) const {
  Tensor t = psi(w);
  for (const auto& [ws, c] : t.terms())
    if (gammaw_->alg()->word_degree(ws[1]) != 0) return false;
  return true;
}

bool Bundle::is_base(const Element& w) const {
  Tensor expect({Om_.get(), gammaw_->alg()});
  for (const auto& [word, c] : w.terms()) expect.add_term({word, Word()}, c);
  return psi(w) == expect;
}

std::vector<Element> Bundle::horizontal_spanning(int max_degree, size_t max_len) const {
  std::vector<int> hletters;
  for (int g = 0; g < Om_->num_generators(); ++g)
    if (is_horizontal(Om_->generator(g))) hletters.push_back(g);
  std::vector<Word> words;
  words.push_back(Word());
  size_t begin = 0;
  while (begin < words.size()) {
    size_t end = words.size();
    for (size_t k = begin; k < end; ++k) {
      if (words[k].size() >= max_len) continue;
      for (int g : hletters) {
        Word w = words[k];
        w.push_back(static_cast<unsigned char>(g));
        if (Om_->word_degree(w) > max_degree || !Om_->is_irreducible(w)) continue;
        words.push_back(std::move(w));
      }
    }
    begin = end;
  }
  std::vector<Element> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(Om_->monomial(w));
  return out;
}

Element Bundle::RepData::W(int k, int i) const {
  // W = Z X C^{-1}; C is scalar so invert it densely
  int n = static_cast<int>(C.size());
  std::vector<std::vector<Scalar>> inv(static_cast<size_t>(n),
                                       std::vector<Scalar>(static_cast<size_t>(n), Scalar::zero()));
  std::vector<std::vector<Scalar>> a = C;
  for (int r = 0; r < n; ++r) inv[static_cast<size_t>(r)][static_cast<size_t>(r)] = Scalar::one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) fail(Errc::DimensionMismatch, "singular C matrix");
    std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(col)]);
    std::swap(inv[static_cast<size_t>(piv)], inv[static_cast<size_t>(col)]);
    Scalar d = a[static_cast<size_t>(col)][static_cast<size_t>(col)].inverse();
    for (int cc = 0; cc < n; ++cc) {
      a[static_cast<size_t>(col)][static_cast<size_t>(cc)] *= d;
      inv[static_cast<size_t>(col)][static_cast<size_t>(cc)] *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Scalar f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int cc = 0; cc < n; ++cc) {
        a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
            f * a[static_cast<size_t>(col)][static_cast<size_t>(cc)];
        inv[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
            f * inv[static_cast<size_t>(col)][static_cast<size_t>(cc)];
      }
    }
  }
  const Algebra* A = X[0][0].algebra();
  Element out(A);
  for (int l = 0; l < n; ++l)
    out += X[static_cast<size_t>(k)][static_cast<size_t>(l)] *
           (Zdiag[static_cast<size_t>(k)] * inv[static_cast<size_t>(l)][static_cast<size_t>(i)]);
  return out;
}

void Bundle::register_rep(const std::string& name, RepData data) {
  reps_.emplace(name, std::move(data));
}

const Bundle::RepData& Bundle::rep(const std::string& name) const {
  auto it = reps_.find(name);
  if (it == reps_.end())
    fail(Errc::RepresentationMismatch, "no corepresentation named " + name + " on " + name_);
  return it->second;
}

std::vector<std::string> Bundle::rep_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : reps_) out.push_back(k);
  return out;
}

void Bundle::map_coefficient(const Word& g_word, const std::string& rep, int i, int j) {
  coeff_[g_word] = {rep, i, j};
}

std::optional<Bundle::CoeffRef> Bundle::coefficient(const Word& g_word) const {
  auto it = coeff_.find(g_word);
  if (it == coeff_.end()) return std::nullopt;
  const auto& [name, i, j] = it->second;
  return CoeffRef{&rep(name), i, j};
}

static Element rand_in(const Algebra& A, std::mt19937& rng, int max_len, int nterms) {
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

Bundle::Report Bundle::check_qpb(int samples, unsigned seed) const {
  Report rep;
  const Algebra* Om = Om_.get();
  const Algebra* Ga = gammaw_->alg();
  std::mt19937 rng(seed);

  // differential *-algebra morphism on generators
  for (int g = 0; g < Om->num_generators(); ++g) {
    Element gen = Om->generator(g);
    if (!(psi(d(gen)) == d_tensor(psi(gen))))
      rep.failures.push_back("Psi d != d Psi at generator " + Om->gen(g).name);
    Tensor lhs = psi(gen.star());
    Tensor starred({Om, Ga});
    Tensor psig = psi(gen);
    for (const auto& [ws, c] : psig.terms()) {
      int k0 = Om->word_degree(ws[0]);
      int k1 = Ga->word_degree(ws[1]);
      Scalar sgn = (k0 * k1 % 2 != 0) ? -c.conj() : c.conj();
      starred.add_product_term({Om->monomial(ws[0]).star(), Ga->monomial(ws[1]).star()}, sgn);
    }
    if (!(lhs == starred))
      rep.failures.push_back("Psi does not intertwine * at generator " + Om->gen(g).name);
    if (!d(d(gen)).is_zero())
      rep.failures.push_back("d^2 != 0 at generator " + Om->gen(g).name);
    if (!(d(gen.star()) == d(gen).star()))
      rep.failures.push_back("d * != * d at generator " + Om->gen(g).name);
  }
  // multiplicativity and coaction axioms on samples
  for (int s = 0; s < samples; ++s) {
    Element a = rand_in(*Om, rng, 3, 2), b = rand_in(*Om, rng, 3, 2);
    if (!(psi(a * b) == psi(a) * psi(b))) rep.failures.push_back("Psi not multiplicative");
    if (a.is_homogeneous()) {
      int k = a.degree().value_or(0);
      Element rhs = d(a) * b + ((k % 2 == 0) ? a * d(b) : -(a * d(b)));
      if (!(d(a * b) == rhs)) rep.failures.push_back("Leibniz rule fails");
    }
    // counit leg: (id x eps) Psi = id
    Element back =
        psi(a).contract_leg(1, [this](const Element& e) { return gammaw_->eps(e); }).as_element();
    if (!(back == a)) rep.failures.push_back("(id x eps) Psi != id");
    // coassociativity against the extended coproduct
    Tensor l = psi(a).splice_leg(0, [this](const Element& e) { return psi(e); });
    Tensor r = psi(a).splice_leg(1, [this](const Element& e) { return gammaw_->phi(e); });
    if (!(l == r)) rep.failures.push_back("(Psi x id) Psi != (id x phi) Psi");
    // base characterization, both directions
    if (is_base(a) != base_decl_(a))
      rep.failures.push_back("declared base recognizer disagrees with the coaction at " +
                             a.str());
  }
  // registered corepresentation data
  for (const auto& [rname, rd] : reps_) {
    if (!rd.corep.check().ok())
      rep.failures.push_back(rname + ": corepresentation tables fail their axioms");
    int d_sz = rd.dsize(), n = rd.n();
    for (int k = 0; k < d_sz; ++k) {
      if (!intertwines(rd.corep, rd.X[static_cast<size_t>(k)],
                       [this](const Element& x) { return psi(x); }))
        rep.failures.push_back(rname + ": generator row " + std::to_string(k) +
                               " is not an intertwiner");
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Element s = Om->zero();
        for (int k = 0; k < d_sz; ++k)
          s += rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)].star() *
               rd.X[static_cast<size_t>(k)][static_cast<size_t>(j)];
        Element target = (i == j) ? Om->unit() : Om->zero();
        if (!(s == target))
          rep.failures.push_back(rname + ": column normalization fails at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
        Element w = Om->zero();
        for (int k = 0; k < d_sz; ++k)
          w += rd.W(k, i) * rd.X[static_cast<size_t>(k)][static_cast<size_t>(j)].star();
        if (!(w == target))
          rep.failures.push_back(rname + ": W^T X* != Id at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
      }
  }
  // surjectivity of the canonical map, witnessed on the registered basis
  for (const auto& [w, ref] : coeff_) {
    auto cr = coefficient(w);
    const RepData& rd = *cr->rep;
    Tensor img({Om, Ga});
    for (int k = 0; k < rd.dsize(); ++k) {
      Tensor t = psi(rd.X[static_cast<size_t>(k)][static_cast<size_t>(cr->j)]);
      Element left = rd.X[static_cast<size_t>(k)][static_cast<size_t>(cr->i)].star();
      for (const auto& [ws, c] : t.terms()) {
        for (const auto& [lw, lc] : left.terms()) {
          Word prod = lw;
          prod += ws[0];
          Element nf = Om->nf_word(prod, lc * c);
          for (const auto& [fw, fc] : nf.terms()) img.add_term({fw, ws[1]}, fc);
        }
      }
    }
    Tensor expect({Om, Ga});
    Word gw;
    for (unsigned char l : w) gw.push_back(l);
    expect.add_term({Word(), gw}, Scalar::one());
    if (!(img == expect))
      rep.failures.push_back("translation witness fails at basis word " +
                             G_->alg()->word_str(w));
  }
  return rep;
}

// ---- connection ----

Connection::Connection(const Bundle* b, std::string name, std::vector<Element> values)
    : b_(b), name_(std::move(name)), omega_(std::move(values)) {
  if (static_cast<int>(omega_.size()) != b_->structure_calculus()->dim())
    fail(Errc::DimensionMismatch, "connection table size != dim inv Gamma");
}

Element Connection::apply(const InvForm& th) const {
  Element out = b_->forms()->zero();
  for (size_t i = 0; i < omega_.size(); ++i) out += omega_[i] * th[i];
  return out;
}

bool Connection::check() const {
  const Calculus* cal = b_->structure_calculus();
  const Algebra* Ga = b_->gamma()->alg();
  for (int i = 0; i < cal->dim(); ++i) {
    Tensor lhs = b_->psi(omega_[static_cast<size_t>(i)]);
    Tensor rhs({b_->forms(), Ga});
    for (int j = 0; j < cal->dim(); ++j) {
      const Element& coef = cal->ad_table()[static_cast<size_t>(i)][static_cast<size_t>(j)];
      rhs.add_product_term({omega_[static_cast<size_t>(j)], reletter(Ga, coef)}, Scalar::one());
    }
    Word th;
    th.push_back(static_cast<unsigned char>(
        static_cast<int>(b_->gamma()->theta_letter(i))));
    rhs.add_term({Word(), th}, Scalar::one());
    if (!(lhs == rhs)) return false;
  }
  return true;
}

Connection Connection::dual() const {
  const Calculus* cal = b_->structure_calculus();
  std::vector<Element> vals;
  for (int i = 0; i < cal->dim(); ++i) {
    InvForm e = cal->zero_form();
    e[static_cast<size_t>(i)] = Scalar::one();
    InvForm st = cal->star(e);
    vals.push_back(apply(st).star());
  }
  return Connection(b_, name_ + "-hat", std::move(vals));
}

bool Connection::is_real() const {
  Connection h = dual();
  for (size_t i = 0; i < omega_.size(); ++i)
    if (!(h.omega_[i] == omega_[i])) return false;
  return true;
}

bool Connection::is_imaginary() const {
  Connection h = dual();
  for (size_t i = 0; i < omega_.size(); ++i)
    if (!(h.omega_[i] == -omega_[i])) return false;
  return true;
}

Connection Connection::displaced(const std::string& name,
                                 const std::vector<Element>& lambda) const {
  std::vector<Element> vals = omega_;
  for (size_t i = 0; i < vals.size(); ++i) vals[i] += lambda[i];
  return Connection(b_, name, std::move(vals));
}

bool Connection::is_multiplicative() const {
  const Calculus* cal = b_->structure_calculus();
  int m = cal->dim();
  for (const auto& row : cal->wedge_relations()) {
    Element s = b_->forms()->zero();
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const Scalar& c = row[static_cast<size_t>(j * m + k)];
        if (c.is_zero()) continue;
        s += omega_[static_cast<size_t>(j)] * omega_[static_cast<size_t>(k)] * c;
      }
    if (!s.is_zero()) return false;
  }
  return true;
}

Element Connection::ell(const InvForm& th, const Element& horizontal) const {
  const Calculus* cal = b_->structure_calculus();
  Element out = apply(th) * horizontal;
  Tensor t = b_->psi(horizontal);
  for (const auto& [ws, c] : t.terms()) {
    Element g = b_->gamma()->project0(b_->gamma()->alg()->monomial(ws[1]));
    int k = b_->forms()->word_degree(ws[0]);
    Element term = b_->forms()->monomial(ws[0], c) * apply(cal->circ(th, g));
    out -= (k % 2 == 0) ? term : -term;
  }
  return out;
}

Connection::RegularityReport Connection::is_regular(int degree_budget, size_t max_len) const {
  RegularityReport rep;
  rep.degree_budget = degree_budget;
  const Calculus* cal = b_->structure_calculus();
  auto spanning = b_->horizontal_spanning(degree_budget, max_len);
  rep.words_checked = spanning.size();
  for (const auto& phi : spanning) {
    for (int i = 0; i < cal->dim(); ++i) {
      InvForm e = cal->zero_form();
      e[static_cast<size_t>(i)] = Scalar::one();
      Element defect = ell(e, phi);
      if (!defect.is_zero()) {
        rep.regular = false;
        rep.witness = "theta = " + cal->theta_display(i) + ", phi = " + phi.str();
        return rep;
      }
    }
  }
  return rep;
}

Element Connection::curvature(const InvForm& th) const {
  const Calculus* cal = b_->structure_calculus();
  Element out = b_->d(apply(th));
  auto mat = cal->delta(th);
  int m = cal->dim();
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      const Scalar& c = mat[static_cast<size_t>(j)][static_cast<size_t>(k)];
      if (c.is_zero()) continue;
      out -= omega_[static_cast<size_t>(j)] * omega_[static_cast<size_t>(k)] * c;
    }
  return out;
}

Element Connection::cov_deriv(const Element& horizontal) const {
  if (!b_->is_horizontal(horizontal))
    fail(Errc::NotHorizontal, "covariant derivative needs a horizontal argument");
  const Calculus* cal = b_->structure_calculus();
  Element out = b_->d(horizontal);
  Tensor t = b_->psi(horizontal);
  for (const auto& [ws, c] : t.terms()) {
    Element g = b_->gamma()->project0(b_->gamma()->alg()->monomial(ws[1]));
    int k = b_->forms()->word_degree(ws[0]);
    Element term = b_->forms()->monomial(ws[0], c) * apply(cal->pi(g));
    out -= (k % 2 == 0) ? term : -term;
  }
  return out;
}

Element Connection::dual_cov_deriv(const Element& horizontal) const {
  return cov_deriv(horizontal.star()).star();
}

// ---- builders ----

std::shared_ptr<Bundle> make_trivial_bundle(const std::string& name, const PresentedDGA& base,
                                            std::shared_ptr<HopfAlgebra> structure,
                                            std::shared_ptr<Calculus> cal) {
  auto env = std::make_shared<Envelope>(cal);
  const Algebra* Mb = base.alg.get();
  const Algebra* Ga = env->alg();
  auto Om = std::make_shared<Algebra>(name + "-forms");
  int off = Mb->num_generators();
  for (int g = 0; g < off; ++g) {
    const Generator& gen = Mb->gen(g);
    Om->add_generator(gen.name, gen.degree, gen.weight, gen.display);
  }
  for (int g = 0; g < Ga->num_generators(); ++g) {
    const Generator& gen = Ga->gen(g);
    Om->add_generator(gen.name, gen.degree, gen.weight, gen.display);
  }
  for (int g = 0; g < off; ++g) Om->set_star(g, Mb->gen(g).star, Mb->gen(g).star_coef);
  for (int g = 0; g < Ga->num_generators(); ++g)
    Om->set_star(off + g, off + Ga->gen(g).star, Ga->gen(g).star_coef);
  for (const auto& rule : Mb->rules()) {
    Element rhs(Om.get());
    for (const auto& [w, c] : rule.rhs) rhs.add_term(w, c);
    Om->add_rule(rule.lhs, rhs);
  }
  for (const auto& rule : Ga->rules()) {
    Word lhs;
    for (unsigned char l : rule.lhs) lhs.push_back(static_cast<unsigned char>(l + off));
    Element rhs(Om.get());
    for (const auto& [w, c] : rule.rhs) {
      Word nw;
      for (unsigned char l : w) nw.push_back(static_cast<unsigned char>(l + off));
      rhs.add_term(nw, c);
    }
    Om->add_rule(lhs, rhs);
  }
  // cross commutation with the graded sign
  for (int g = 0; g < Ga->num_generators(); ++g)
    for (int b = 0; b < off; ++b) {
      Word lhs;
      lhs.push_back(static_cast<unsigned char>(off + g));
      lhs.push_back(static_cast<unsigned char>(b));
      Word rhs;
      rhs.push_back(static_cast<unsigned char>(b));
      rhs.push_back(static_cast<unsigned char>(off + g));
      int sgn = (Ga->gen(g).degree * Mb->gen(b).degree % 2 != 0) ? -1 : 1;
      Om->add_rule(lhs, Om->monomial(rhs, Scalar(sgn)));
    }
  Om->finalize();

  std::vector<Element> d_table;
  for (int g = 0; g < off; ++g)
    d_table.push_back(reletter(Om.get(), base.d_gen[static_cast<size_t>(g)]));
  for (int g = 0; g < Ga->num_generators(); ++g)
    d_table.push_back(reletter(Om.get(), env->d_table()[static_cast<size_t>(g)], off));

  std::vector<Tensor> psi_table;
  for (int g = 0; g < off; ++g)
    psi_table.push_back(Tensor::of(Om->generator(g), Ga->unit()));
  for (int g = 0; g < Ga->num_generators(); ++g) {
    Tensor t({Om.get(), Ga});
    Tensor ph = env->phi(Ga->generator(g));
    for (const auto& [ws, c] : ph.terms()) {
      Word first;
      for (unsigned char l : ws[0]) first.push_back(static_cast<unsigned char>(l + off));
      t.add_term({first, ws[1]}, c);
    }
    psi_table.push_back(std::move(t));
  }

  auto base_decl = [off](const Element& w) {
    for (const auto& [word, c] : w.terms())
      for (unsigned char l : word)
        if (static_cast<int>(l) >= off) return false;
    return true;
  };
  return std::make_shared<Bundle>(name, structure, cal, env, Om, std::move(d_table),
                                  std::move(psi_table), base_decl);
}

std::shared_ptr<Bundle> make_homogeneous_bundle(const std::string& name,
                                                std::shared_ptr<HopfAlgebra> total,
                                                std::shared_ptr<Envelope> total_forms,
                                                std::shared_ptr<HopfAlgebra> structure,
                                                std::shared_ptr<Calculus> cal,
                                                const std::vector<Element>& proj,
                                                std::function<bool(const Element&)> base_decl) {
  auto env = std::make_shared<Envelope>(cal);
  const Algebra* Gt = total->alg();
  const Algebra* Ga = env->alg();
  auto Om = total_forms->alg_ptr();
  const Calculus* cal_tot = total_forms->calculus();

  auto apply_proj = [&](const Element& x) {
    Element out(structure->alg());
    for (const auto& [w, c] : x.terms()) {
      Element acc = structure->alg()->unit() * c;
      for (unsigned char l : w) acc = acc * proj[l];
      out += acc;
    }
    return out;
  };

  std::vector<Tensor> psi_table;
  for (int g = 0; g < Gt->num_generators(); ++g) {
    Tensor t({Om.get(), Ga});
    Tensor cp = total->coproduct(Gt->generator(g));
    for (const auto& [ws, c] : cp.terms()) {
      Element img = env->embed(apply_proj(Gt->monomial(ws[1])));
      for (const auto& [iw, ic] : img.terms()) t.add_term({ws[0], iw}, c * ic);
    }
    psi_table.push_back(std::move(t));
  }
  for (int i = 0; i < cal_tot->dim(); ++i) {
    Tensor t({Om.get(), Ga});
    const Element& h = cal_tot->preimage(i);
    // (pi x proj) Ad + 1 x germ of the projected element
    Tensor three = total->coproduct2(h);
    for (const auto& [ws, c] : three.terms()) {
      Element mid = total_forms->inv(cal_tot->pi(Gt->monomial(ws[1])));
      Element side = env->embed(
          apply_proj(total->antipode(Gt->monomial(ws[0])) * Gt->monomial(ws[2])));
      for (const auto& [mw, mc] : mid.terms())
        for (const auto& [sw, sc] : side.terms()) t.add_term({mw, sw}, c * mc * sc);
    }
    Element germ = env->inv(cal->pi(apply_proj(h)));
    for (const auto& [gw, gc] : germ.terms()) t.add_term({Word(), gw}, gc);
    psi_table.push_back(std::move(t));
  }

  return std::make_shared<Bundle>(name, structure, cal, env, Om,
                                  total_forms->d_table(), std::move(psi_table),
                                  std::move(base_decl));
}

}  // namespace qb

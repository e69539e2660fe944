#include "qb/gauge.hpp"

#include <random>

namespace qb {

void BalTensor::add_term(const Word& l, const Word& r, const Scalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(l, r);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void BalTensor::add_product(const Element& l, const Element& r, const Scalar& c) {
  for (const auto& [lw, lc] : l.terms())
    for (const auto& [rw, rc] : r.terms()) add_term(lw, rw, c * lc * rc);
}

BalTensor BalTensor::operator+(const BalTensor& o) const {
  BalTensor out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k.first, k.second, c);
  return out;
}

BalTensor BalTensor::operator-(const BalTensor& o) const { return *this + (-o); }

BalTensor BalTensor::operator-() const {
  BalTensor out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

BalTensor BalTensor::operator*(const Scalar& c) const {
  BalTensor out(b_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& [k, v] : out.terms_) v *= c;
  return out;
}

BalTensor BalTensor::left_mul(const Element& a) const {
  BalTensor out(b_);
  const Algebra* Om = b_->forms();
  for (const auto& [k, c] : terms_) {
    for (const auto& [aw, ac] : a.terms()) {
      Word w = aw;
      w += k.first;
      Element nf = Om->nf_word(w, ac * c);
      for (const auto& [fw, fc] : nf.terms()) out.add_term(fw, k.second, fc);
    }
  }
  return out;
}

BalTensor BalTensor::right_mul(const Element& a) const {
  BalTensor out(b_);
  const Algebra* Om = b_->forms();
  for (const auto& [k, c] : terms_) {
    for (const auto& [aw, ac] : a.terms()) {
      Word w = k.second;
      w += aw;
      Element nf = Om->nf_word(w, ac * c);
      for (const auto& [fw, fc] : nf.terms()) out.add_term(k.first, fw, fc);
    }
  }
  return out;
}

Tensor BalTensor::beta() const {
  const Algebra* Om = b_->forms();
  Tensor out({Om, b_->gamma()->alg()});
  for (const auto& [k, c] : terms_) {
    Tensor t = b_->psi(Om->monomial(k.second));
    for (const auto& [ws, tc] : t.terms()) {
      Word w = k.first;
      w += ws[0];
      Element nf = Om->nf_word(w, c * tc);
      for (const auto& [fw, fc] : nf.terms()) out.add_term({fw, ws[1]}, fc);
    }
  }
  return out;
}

bool BalTensor::eq(const BalTensor& o) const { return beta() == o.beta(); }

BalTensor BalTensor::d() const {
  BalTensor out(b_);
  const Algebra* Om = b_->forms();
  for (const auto& [k, c] : terms_) {
    Element dl = b_->d(Om->monomial(k.first));
    for (const auto& [w, cc] : dl.terms()) out.add_term(w, k.second, c * cc);
    Element dr = b_->d(Om->monomial(k.second));
    Scalar sgn = (Om->word_degree(k.first) % 2 == 0) ? c : -c;
    for (const auto& [w, cc] : dr.terms()) out.add_term(k.first, w, sgn * cc);
  }
  return out;
}

Element BalTensor::merge() const {
  const Algebra* Om = b_->forms();
  Element out(Om);
  for (const auto& [k, c] : terms_) {
    Word w = k.first;
    w += k.second;
    out += Om->nf_word(w, c);
  }
  return out;
}

std::string BalTensor::str() const {
  if (terms_.empty()) return "0";
  const Algebra* Om = b_->forms();
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
               cs.find(" - ", 1) == std::string::npos && cs.find('/') == std::string::npos;
    if (neg) cs = cs.substr(1);
    bool simple = cs.find('+') == std::string::npos && cs.find(' ') == std::string::npos &&
                  cs.find('/') == std::string::npos;
    std::string term;
    if (cs != "1" || !simple) term = (simple ? cs : "(" + (neg ? "-" + cs : cs) + ")") + " ";
    if (!simple) neg = false;
    term += Om->word_str(k.first) + " ⊗ " + Om->word_str(k.second);
    if (first)
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

BalTensor qtrs0(const Bundle& b, const Element& g) {
  const Algebra* G = b.structure_hopf()->alg();
  Element nf = G->normal_form(g);
  BalTensor out(&b);
  for (const auto& [w, c] : nf.terms()) {
    auto ref = b.coefficient(w);
    if (!ref)
      fail(Errc::GradeOverflow,
           "no registered corepresentation coefficient for " + G->word_str(w));
    const Bundle::RepData& rd = *ref->rep;
    for (int k = 0; k < rd.dsize(); ++k)
      out.add_product(rd.X[static_cast<size_t>(k)][static_cast<size_t>(ref->i)].star(),
                      rd.X[static_cast<size_t>(k)][static_cast<size_t>(ref->j)], c);
  }
  return out;
}

BalTensor qtrs1(const Bundle& b, const Connection& omega, const InvForm& th) {
  const Calculus* cal = b.structure_calculus();
  BalTensor out(&b);
  out.add_product(b.forms()->unit(), omega.apply(th), Scalar::one());
  // minus (m x id)(omega x qtrs) ad(theta)
  for (int i = 0; i < cal->dim(); ++i) {
    if (th[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < cal->dim(); ++j) {
      const Element& coef = cal->ad_table()[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (coef.is_zero()) continue;
      BalTensor piece = qtrs0(b, coef).left_mul(omega.value(j)) * th[static_cast<size_t>(i)];
      out = out - piece;
    }
  }
  return out;
}

BalTensor qtrs(const Bundle& b, const Connection& omega, const Element& gamma_elt) {
  const Algebra* Ga = b.gamma()->alg();
  const Calculus* cal = b.structure_calculus();
  int theta0 = b.gamma()->theta_letter(0);
  Element nf = Ga->normal_form(gamma_elt);
  BalTensor out(&b);
  for (const auto& [w, c] : nf.terms()) {
    int deg = Ga->word_degree(w);
    if (deg == 0) {
      Element g = b.gamma()->project0(Ga->monomial(w));
      out = out + qtrs0(b, g) * c;
      continue;
    }
    if (deg != 1) fail(Errc::GradeOverflow, "qtrs only materialized in degrees 0 and 1");
    // normal words of degree 1 end with a single theta letter
    Word gw = w.substr(0, w.size() - 1);
    int i = static_cast<int>(w.back()) - theta0;
    for (unsigned char l : gw)
      if (static_cast<int>(l) >= theta0)
        fail(Errc::Internal, "unexpected form letter inside a degree-1 word");
    InvForm th = cal->zero_form();
    th[static_cast<size_t>(i)] = Scalar::one();
    BalTensor S = qtrs1(b, omega, th);
    BalTensor T0 = qtrs0(b, b.structure_hopf()->alg()->monomial(gw));
    // qtrs(g theta) = [theta]_1 [g]_1 (x) [g]_2 [theta]_2
    BalTensor piece(&b);
    const Algebra* Om = b.forms();
    for (const auto& [sk, sc] : S.terms()) {
      for (const auto& [tk, tc] : T0.terms()) {
        Word lw = sk.first;
        lw += tk.first;
        Word rw = tk.second;
        rw += sk.second;
        Element lnf = Om->nf_word(lw, sc * tc * c);
        for (const auto& [flw, flc] : lnf.terms()) {
          Element rnf = Om->nf_word(rw, flc);
          for (const auto& [frw, frc] : rnf.terms()) piece.add_term(flw, frw, frc);
        }
      }
    }
    out = out + piece;
  }
  return out;
}

std::vector<Word> gamma_spanning(const Bundle& b, size_t max_len) {
  auto words = b.gamma()->alg()->irreducible_words(1, max_len);
  return words;
}

Qgt::Qgt(const Bundle* b, std::string name, std::map<Word, Element> table,
         std::map<Word, Element> inverse_table)
    : b_(b), name_(std::move(name)), f_(std::move(table)), finv_(std::move(inverse_table)) {}

static Element table_apply(const Bundle* b, const std::map<Word, Element>& tab,
                           const Element& gamma_elt) {
  const Algebra* Ga = b->gamma()->alg();
  Element nf = Ga->normal_form(gamma_elt);
  Element out(b->forms());
  for (const auto& [w, c] : nf.terms()) {
    auto it = tab.find(w);
    if (it == tab.end())
      fail(Errc::GradeOverflow, "gauge table does not cover " + Ga->word_str(w));
    out += it->second * c;
  }
  return out;
}

Element Qgt::apply(const Element& gamma_elt) const { return table_apply(b_, f_, gamma_elt); }
Element Qgt::apply_inv(const Element& gamma_elt) const {
  return table_apply(b_, finv_, gamma_elt);
}

Element Qgt::F(const Element& w) const {
  Tensor t = b_->psi(w);
  Element out(b_->forms());
  for (const auto& [ws, c] : t.terms())
    out += b_->forms()->monomial(ws[0]) * apply(b_->gamma()->alg()->monomial(ws[1])) * c;
  return out;
}

Element Qgt::F_inv(const Element& w) const {
  Tensor t = b_->psi(w);
  Element out(b_->forms());
  for (const auto& [ws, c] : t.terms())
    out += b_->forms()->monomial(ws[0]) * apply_inv(b_->gamma()->alg()->monomial(ws[1])) * c;
  return out;
}

static Element rand_form(const Algebra& A, std::mt19937& rng, int max_len, int nterms) {
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

Qgt::Certificate Qgt::certify(int samples, unsigned seed) const {
  Certificate cert;
  cert.left_module = true;
  cert.covariant = true;
  cert.multiplicative = true;
  cert.star = true;
  cert.differential = true;
  const Algebra* Om = b_->forms();
  std::mt19937 rng(seed);
  // a probe outside the table's vertical range leaves the capability
  // uncertified rather than crashing the caller
  auto holds = [](bool& flag, const std::function<bool()>& f) {
    try {
      if (!f()) flag = false;
    } catch (const Error&) {
      flag = false;
    }
  };
  std::vector<Element> probes;
  for (int g = 0; g < Om->num_generators(); ++g) probes.push_back(Om->generator(g));
  for (int s = 0; s < samples; ++s) probes.push_back(rand_form(*Om, rng, 2, 2));
  for (const Element& w : probes) {
    holds(cert.covariant, [&] {
      Tensor lhs = b_->psi(F(w));
      Tensor rhs = b_->psi(w).map_leg(0, Om, [this](const Element& x) { return F(x); });
      return lhs == rhs;
    });
    holds(cert.star, [&] { return F(w.star()) == F(w).star(); });
    holds(cert.differential, [&] { return F(b_->d(w)) == b_->d(F(w)); });
  }
  for (int s = 0; s < samples; ++s) {
    Element a = rand_form(*Om, rng, 2, 2), bb = rand_form(*Om, rng, 2, 2);
    holds(cert.multiplicative, [&] { return F(a * bb) == F(a) * F(bb); });
  }
  return cert;
}

Qgt::Report Qgt::check() const {
  Report rep;
  const Algebra* Ga = b_->gamma()->alg();
  const Envelope* env = b_->gamma();
  if (!(apply(Ga->unit()) == b_->forms()->unit()))
    rep.failures.push_back(name_ + ": f(1) != 1");
  for (const auto& [w, val] : f_) {
    Element x = Ga->monomial(w);
    // grade preservation
    if (!val.is_zero() && val.degree() != std::optional<int>(Ga->word_degree(w)))
      rep.failures.push_back(name_ + ": f is not grade preserving at " + Ga->word_str(w));
    // convolution inverse on the spanning set
    Tensor two = env->phi(x);
    Element conv(b_->forms());
    Element conv2(b_->forms());
    for (const auto& [ws, c] : two.terms()) {
      conv += apply(Ga->monomial(ws[0])) * apply_inv(Ga->monomial(ws[1])) * c;
      conv2 += apply_inv(Ga->monomial(ws[0])) * apply(Ga->monomial(ws[1])) * c;
    }
    Element target = b_->forms()->unit() * env->eps(x);
    if (!(conv == target))
      rep.failures.push_back(name_ + ": f * f^-1 != 1 eps at " + Ga->word_str(w));
    if (!(conv2 == target))
      rep.failures.push_back(name_ + ": f^-1 * f != 1 eps at " + Ga->word_str(w));
    // Ad-covariance
    Tensor lhs = b_->psi(val);
    Tensor ad = env->adjoint(x);
    Tensor rhs({b_->forms(), Ga});
    for (const auto& [ws, c] : ad.terms()) {
      Element img = apply(Ga->monomial(ws[0]));
      for (const auto& [iw, ic] : img.terms()) rhs.add_term({iw, ws[1]}, c * ic);
    }
    if (!(lhs == rhs))
      rep.failures.push_back(name_ + ": Ad-covariance fails at " + Ga->word_str(w));
  }
  return rep;
}

Qgt Qgt::convolve(const Qgt& other) const {
  const Algebra* Ga = b_->gamma()->alg();
  const Envelope* env = b_->gamma();
  std::map<Word, Element> tab, inv;
  for (const auto& [w, unused] : f_) {
    Element x = Ga->monomial(w);
    Tensor two = env->phi(x);
    Element val(b_->forms());
    Element vinv(b_->forms());
    for (const auto& [ws, c] : two.terms()) {
      val += apply(Ga->monomial(ws[0])) * other.apply(Ga->monomial(ws[1])) * c;
      vinv += other.apply_inv(Ga->monomial(ws[0])) * apply_inv(Ga->monomial(ws[1])) * c;
    }
    tab[w] = val;
    inv[w] = vinv;
  }
  return Qgt(b_, name_ + "*" + other.name_, std::move(tab), std::move(inv));
}

Qgt char_to_gauge(const Bundle& b, const Character& chi) {
  const HopfAlgebra* H = b.structure_hopf();
  const Algebra* G = H->alg();
  // centrality: (id x chi) phi = (chi x id) phi on generators
  for (int g = 0; g < G->num_generators(); ++g) {
    Tensor two = H->coproduct(G->generator(g));
    Element l(G), r(G);
    for (const auto& [ws, c] : two.terms()) {
      l += G->monomial(ws[0]) * (c * chi(G->monomial(ws[1])));
      r += G->monomial(ws[1]) * (c * chi(G->monomial(ws[0])));
    }
    if (!(l == r))
      fail(Errc::CentralityViolated,
           "character " + chi.name() + " is not central at " + G->gen(g).name);
  }
  Character inv = chi.inverse();
  std::map<Word, Element> tab, itab;
  // characters vanish on every positive form degree, so the table can cover
  // higher vertical degrees with zeros
  for (const auto& w : b.gamma()->alg()->irreducible_words(4, 6)) {
    if (b.gamma()->alg()->word_degree(w) == 0) {
      Element g = b.gamma()->project0(b.gamma()->alg()->monomial(w));
      tab[w] = b.forms()->unit() * chi(g);
      itab[w] = b.forms()->unit() * inv(g);
    } else {
      tab[w] = b.forms()->zero();
      itab[w] = b.forms()->zero();
    }
  }
  return Qgt(&b, "Delta(" + chi.name() + ")", std::move(tab), std::move(itab));
}

Qgt qgt_from_F(const Bundle& b, const Connection& omega, const std::string& name,
               const std::function<Element(const Element&)>& F,
               const std::function<Element(const Element&)>& F_inv, size_t max_len) {
  // covariance precheck on generators: (F x id) Psi = Psi F
  const Algebra* Om = b.forms();
  for (int g = 0; g < Om->num_generators(); ++g) {
    Element gen = Om->generator(g);
    Tensor lhs = b.psi(F(gen));
    Tensor rhs = b.psi(gen).map_leg(0, Om, F);
    if (!(lhs == rhs))
      fail(Errc::NotCovariant, "module map is not covariant at " + Om->gen(g).name);
  }
  std::map<Word, Element> tab, itab;
  for (const auto& w : gamma_spanning(b, max_len)) {
    BalTensor t = qtrs(b, omega, b.gamma()->alg()->monomial(w));
    Element val(Om), ival(Om);
    for (const auto& [k, c] : t.terms()) {
      val += Om->monomial(k.first) * F(Om->monomial(k.second)) * c;
      ival += Om->monomial(k.first) * F_inv(Om->monomial(k.second)) * c;
    }
    tab[w] = val;
    itab[w] = ival;
  }
  return Qgt(&b, name, std::move(tab), std::move(itab));
}

Connection gauge_act(const Qgt& f, const Connection& omega) {
  const Calculus* cal = f.bundle()->structure_calculus();
  std::vector<Element> vals;
  for (int i = 0; i < cal->dim(); ++i) vals.push_back(f.F(omega.value(i)));
  return Connection(f.bundle(), f.name() + "⊛" + omega.name(), std::move(vals));
}

Section section_transform(const Qgt& f, const Section& T) {
  Section out{T.b, T.rep, {}};
  for (const auto& v : T.values) out.values.push_back(f.F(v));
  return out;
}

Section section_transform_inv(const Qgt& f, const Section& T) {
  Section out{T.b, T.rep, {}};
  for (const auto& v : T.values) out.values.push_back(f.F_inv(v));
  return out;
}

}  // namespace qb

#include "qb/assoc.hpp"

namespace qb {

namespace {

const Bundle::RepData& rep_of(const Bundle* b, const std::string& rep) { return b->rep(rep); }

Element herm_gen_L(const Bundle::RepData& rd, int k, int l) {
  const Algebra* A = rd.X[0][0].algebra();
  Element out(A);
  for (int i = 0; i < rd.n(); ++i)
    out += rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)] *
           rd.X[static_cast<size_t>(l)][static_cast<size_t>(i)].star();
  return out;
}

Element herm_gen_R(const Bundle::RepData& rd, int k, int l) {
  const Algebra* A = rd.X[0][0].algebra();
  Element out(A);
  for (int i = 0; i < rd.n(); ++i)
    out += (rd.Zdiag[static_cast<size_t>(k)] * rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)])
               .star() *
           (rd.Zdiag[static_cast<size_t>(l)] * rd.X[static_cast<size_t>(l)][static_cast<size_t>(i)]);
  return out;
}

}  // namespace

bool Section::check(bool degree0) const {
  const auto& rd = rep_of(b, rep);
  if (static_cast<int>(values.size()) != rd.n()) return false;
  if (degree0)
    for (const auto& v : values)
      if (!v.is_zero() && !(v.degree().has_value() && *v.degree() == 0)) return false;
  return intertwines(rd.corep, values, [this](const Element& x) { return b->psi(x); });
}

Section Section::star_values() const {
  Section out{b, rep, {}};
  for (const auto& v : values) out.values.push_back(v.star());
  return out;
}

bool QvbL::operator==(const QvbL& o) const {
  if (rep != o.rep) return false;
  return upsilon_inv(*this).values == upsilon_inv(o).values;
}

bool QvbR::operator==(const QvbR& o) const {
  if (rep != o.rep) return false;
  return tilde_upsilon_inv(*this).values == tilde_upsilon_inv(o).values;
}

QvbL QvbL::operator+(const QvbL& o) const {
  if (rep != o.rep) fail(Errc::RepresentationMismatch, "qvb form sum across reps");
  QvbL out = *this;
  for (size_t k = 0; k < mu.size(); ++k) out.mu[k] += o.mu[k];
  return out;
}

QvbL QvbL::operator-() const {
  QvbL out = *this;
  for (auto& m : out.mu) m = -m;
  return out;
}

QvbL QvbL::left_mul(const Element& base_form) const {
  QvbL out = *this;
  for (auto& m : out.mu) m = base_form * m;
  return out;
}

std::string QvbL::str() const {
  std::string out;
  for (size_t k = 0; k < mu.size(); ++k) {
    if (mu[k].is_zero()) continue;
    std::string term = "(" + mu[k].str() + ") ⊗ T[" + std::to_string(k) + "]";
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

QvbR QvbR::operator+(const QvbR& o) const {
  if (rep != o.rep) fail(Errc::RepresentationMismatch, "qvb form sum across reps");
  QvbR out = *this;
  for (size_t k = 0; k < mu.size(); ++k) out.mu[k] += o.mu[k];
  return out;
}

std::string QvbR::str() const {
  std::string out;
  for (size_t k = 0; k < mu.size(); ++k) {
    if (mu[k].is_zero()) continue;
    std::string term = "T[" + std::to_string(k) + "] ⊗ (" + mu[k].str() + ")";
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

Section generator_section(const Bundle& b, const std::string& rep, int k) {
  const auto& rd = b.rep(rep);
  return Section{&b, rep, rd.X.at(static_cast<size_t>(k))};
}

std::vector<Element> left_decompose(const Section& T) {
  if (!T.check()) fail(Errc::NotIntertwiner, "left_decompose needs a section");
  const auto& rd = rep_of(T.b, T.rep);
  std::vector<Element> p;
  for (int k = 0; k < rd.dsize(); ++k) {
    Element pk(T.b->forms());
    for (int i = 0; i < rd.n(); ++i)
      pk += T.values[static_cast<size_t>(i)] *
            rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)].star();
    if (!T.b->is_base(pk))
      fail(Errc::NotIntertwiner, "left coefficient is not a base element");
    p.push_back(std::move(pk));
  }
  // reconstruction is exact
  for (int i = 0; i < rd.n(); ++i) {
    Element back(T.b->forms());
    for (int k = 0; k < rd.dsize(); ++k)
      back += p[static_cast<size_t>(k)] * rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)];
    if (!(back == T.values[static_cast<size_t>(i)]))
      fail(Errc::Internal, "left decomposition does not reconstruct the section");
  }
  return p;
}

std::vector<Element> right_decompose(const Section& T) {
  if (!T.check()) fail(Errc::NotIntertwiner, "right_decompose needs a section");
  const auto& rd = rep_of(T.b, T.rep);
  std::vector<Element> p;
  for (int k = 0; k < rd.dsize(); ++k) {
    Element pk(T.b->forms());
    for (int j = 0; j < rd.n(); ++j)
      pk += rd.Zdiag[static_cast<size_t>(k)].inverse() *
            (rd.W(k, j).star() * T.values[static_cast<size_t>(j)]);
    if (!T.b->is_base(pk))
      fail(Errc::NotIntertwiner, "right coefficient is not a base element");
    p.push_back(std::move(pk));
  }
  for (int i = 0; i < rd.n(); ++i) {
    Element back(T.b->forms());
    for (int k = 0; k < rd.dsize(); ++k)
      back += rd.Zdiag[static_cast<size_t>(k)] *
              (rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)] * p[static_cast<size_t>(k)]);
    if (!(back == T.values[static_cast<size_t>(i)]))
      fail(Errc::Internal, "right decomposition does not reconstruct the section");
  }
  return p;
}

Section from_left_coeffs(const Bundle& b, const std::string& rep,
                         const std::vector<Element>& p) {
  const auto& rd = b.rep(rep);
  Section out{&b, rep, std::vector<Element>(static_cast<size_t>(rd.n()), b.forms()->zero())};
  for (int i = 0; i < rd.n(); ++i)
    for (int k = 0; k < rd.dsize(); ++k)
      out.values[static_cast<size_t>(i)] +=
          p[static_cast<size_t>(k)] * rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)];
  return out;
}

QvbL upsilon(const Section& tau) {
  if (!tau.check(false)) fail(Errc::NotIntertwiner, "upsilon needs an intertwiner");
  const auto& rd = rep_of(tau.b, tau.rep);
  QvbL out{tau.b, tau.rep, {}};
  for (int k = 0; k < rd.dsize(); ++k) {
    Element mk(tau.b->forms());
    for (int i = 0; i < rd.n(); ++i)
      mk += tau.values[static_cast<size_t>(i)] *
            rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)].star();
    if (!tau.b->is_base(mk)) fail(Errc::NotIntertwiner, "upsilon coefficient not a base form");
    out.mu.push_back(std::move(mk));
  }
  return out;
}

Section upsilon_inv(const QvbL& v) {
  const auto& rd = rep_of(v.b, v.rep);
  Section out{v.b, v.rep, std::vector<Element>(static_cast<size_t>(rd.n()), v.b->forms()->zero())};
  for (int i = 0; i < rd.n(); ++i)
    for (int k = 0; k < rd.dsize(); ++k)
      out.values[static_cast<size_t>(i)] +=
          v.mu[static_cast<size_t>(k)] * rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)];
  return out;
}

QvbR tilde_upsilon(const Section& tau) {
  if (!tau.check(false)) fail(Errc::NotIntertwiner, "tilde_upsilon needs an intertwiner");
  const auto& rd = rep_of(tau.b, tau.rep);
  QvbR out{tau.b, tau.rep, {}};
  for (int k = 0; k < rd.dsize(); ++k) {
    Element mk(tau.b->forms());
    for (int j = 0; j < rd.n(); ++j)
      mk += rd.Zdiag[static_cast<size_t>(k)].inverse() *
            (rd.W(k, j).star() * tau.values[static_cast<size_t>(j)]);
    if (!tau.b->is_base(mk))
      fail(Errc::NotIntertwiner, "tilde_upsilon coefficient not a base form");
    out.mu.push_back(std::move(mk));
  }
  return out;
}

Section tilde_upsilon_inv(const QvbR& v) {
  const auto& rd = rep_of(v.b, v.rep);
  Section out{v.b, v.rep, std::vector<Element>(static_cast<size_t>(rd.n()), v.b->forms()->zero())};
  for (int i = 0; i < rd.n(); ++i)
    for (int k = 0; k < rd.dsize(); ++k)
      out.values[static_cast<size_t>(i)] +=
          rd.Zdiag[static_cast<size_t>(k)] *
          (rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)] * v.mu[static_cast<size_t>(k)]);
  return out;
}

QvbL nabla(const Connection& omega, const Section& T) {
  if (!T.check()) fail(Errc::NotIntertwiner, "nabla needs a section");
  Section dT{T.b, T.rep, {}};
  for (const auto& v : T.values) dT.values.push_back(omega.cov_deriv(v));
  return upsilon(dT);
}

QvbR hat_nabla(const Connection& omega, const Section& T) {
  if (!T.check()) fail(Errc::NotIntertwiner, "hat_nabla needs a section");
  Section dT{T.b, T.rep, {}};
  for (const auto& v : T.values) dT.values.push_back(omega.dual_cov_deriv(v));
  return tilde_upsilon(dT);
}

QvbL ext_cov_deriv(const Connection& omega, const QvbL& v) {
  const auto& rd = rep_of(v.b, v.rep);
  QvbL out{v.b, v.rep,
           std::vector<Element>(static_cast<size_t>(rd.dsize()), v.b->forms()->zero())};
  for (int k = 0; k < rd.dsize(); ++k) {
    const Element& mk = v.mu[static_cast<size_t>(k)];
    if (mk.is_zero()) continue;
    if (!mk.is_homogeneous()) fail(Errc::Internal, "qvb coefficient must be homogeneous");
    int deg = mk.degree().value_or(0);
    out.mu[static_cast<size_t>(k)] += v.b->d(mk);
    QvbL gen = nabla(omega, generator_section(*v.b, v.rep, k));
    for (int l = 0; l < rd.dsize(); ++l) {
      Element term = mk * gen.mu[static_cast<size_t>(l)];
      out.mu[static_cast<size_t>(l)] += (deg % 2 == 0) ? term : -term;
    }
  }
  return out;
}

QvbR ext_cov_deriv_right(const Connection& omega, const QvbR& v) {
  const auto& rd = rep_of(v.b, v.rep);
  QvbR out{v.b, v.rep,
           std::vector<Element>(static_cast<size_t>(rd.dsize()), v.b->forms()->zero())};
  for (int k = 0; k < rd.dsize(); ++k) {
    const Element& mk = v.mu[static_cast<size_t>(k)];
    if (mk.is_zero()) continue;
    out.mu[static_cast<size_t>(k)] += v.b->d(mk);
    Section trk = generator_section(*v.b, v.rep, k);
    for (auto& val : trk.values) val = val * rd.Zdiag[static_cast<size_t>(k)];
    QvbR gen = hat_nabla(omega, trk);
    for (int l = 0; l < rd.dsize(); ++l)
      out.mu[static_cast<size_t>(l)] += gen.mu[static_cast<size_t>(l)] * mk;
  }
  return out;
}

QvbL curvature_assoc(const Connection& omega, const Section& T) {
  return ext_cov_deriv(omega, nabla(omega, T));
}

Element herm_L(const Section& T1, const Section& T2) {
  if (T1.rep != T2.rep) fail(Errc::RepresentationMismatch, "herm_L across different reps");
  Element out(T1.b->forms());
  for (size_t i = 0; i < T1.values.size(); ++i) out += T1.values[i] * T2.values[i].star();
  return out;
}

Element herm_R(const Section& T1, const Section& T2) {
  if (T1.rep != T2.rep) fail(Errc::RepresentationMismatch, "herm_R across different reps");
  Element out(T1.b->forms());
  for (size_t i = 0; i < T1.values.size(); ++i) out += T1.values[i].star() * T2.values[i];
  return out;
}

Element herm_L(const QvbL& v1, const QvbL& v2) {
  if (v1.rep != v2.rep) fail(Errc::RepresentationMismatch, "herm_L across different reps");
  const auto& rd = rep_of(v1.b, v1.rep);
  Element out(v1.b->forms());
  for (int k = 0; k < rd.dsize(); ++k)
    for (int l = 0; l < rd.dsize(); ++l)
      out += v1.mu[static_cast<size_t>(k)] * herm_gen_L(rd, k, l) *
             v2.mu[static_cast<size_t>(l)].star();
  return out;
}

Element herm_L(const QvbL& v1, const Section& T2) {
  const auto& rd = rep_of(v1.b, v1.rep);
  Element out(v1.b->forms());
  for (int k = 0; k < rd.dsize(); ++k) {
    Element pair(v1.b->forms());
    for (int i = 0; i < rd.n(); ++i)
      pair += rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)] *
              T2.values[static_cast<size_t>(i)].star();
    out += v1.mu[static_cast<size_t>(k)] * pair;
  }
  return out;
}

Element herm_L(const Section& T1, const QvbL& v2) {
  const auto& rd = rep_of(v2.b, v2.rep);
  Element out(v2.b->forms());
  for (int l = 0; l < rd.dsize(); ++l) {
    Element pair(v2.b->forms());
    for (int i = 0; i < rd.n(); ++i)
      pair += T1.values[static_cast<size_t>(i)] *
              rd.X[static_cast<size_t>(l)][static_cast<size_t>(i)].star();
    out += pair * v2.mu[static_cast<size_t>(l)].star();
  }
  return out;
}

Element herm_R(const QvbR& v1, const QvbR& v2) {
  if (v1.rep != v2.rep) fail(Errc::RepresentationMismatch, "herm_R across different reps");
  const auto& rd = rep_of(v1.b, v1.rep);
  Element out(v1.b->forms());
  for (int k = 0; k < rd.dsize(); ++k)
    for (int l = 0; l < rd.dsize(); ++l)
      out += v1.mu[static_cast<size_t>(k)].star() * herm_gen_R(rd, k, l) *
             v2.mu[static_cast<size_t>(l)];
  return out;
}

Element herm_R(const QvbR& v1, const Section& T2) {
  const auto& rd = rep_of(v1.b, v1.rep);
  Element out(v1.b->forms());
  for (int k = 0; k < rd.dsize(); ++k) {
    Element pair(v1.b->forms());
    for (int i = 0; i < rd.n(); ++i)
      pair += (rd.Zdiag[static_cast<size_t>(k)] *
               rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)])
                  .star() *
              T2.values[static_cast<size_t>(i)];
    out += v1.mu[static_cast<size_t>(k)].star() * pair;
  }
  return out;
}

Element herm_R(const Section& T1, const QvbR& v2) {
  const auto& rd = rep_of(v2.b, v2.rep);
  Element out(v2.b->forms());
  for (int l = 0; l < rd.dsize(); ++l) {
    Element pair(v2.b->forms());
    for (int i = 0; i < rd.n(); ++i)
      pair += T1.values[static_cast<size_t>(i)].star() *
              (rd.Zdiag[static_cast<size_t>(l)] *
               rd.X[static_cast<size_t>(l)][static_cast<size_t>(i)]);
    out += pair * v2.mu[static_cast<size_t>(l)];
  }
  return out;
}

Element compat_defect(const Connection& omega, const Section& T1, const Section& T2,
                      Side side) {
  if (side == Side::Left) {
    Element a = herm_L(nabla(omega, T1), T2);
    Element b = herm_L(T1, nabla(omega, T2));
    Element c = omega.bundle()->d(herm_L(T1, T2));
    return a + b - c;
  }
  Element a = herm_R(hat_nabla(omega, T1), T2);
  Element b = herm_R(T1, hat_nabla(omega, T2));
  Element c = omega.bundle()->d(herm_R(T1, T2));
  return a + b - c;
}

QvbR sigma_map(const QvbL& v) { return tilde_upsilon(upsilon_inv(v)); }

std::vector<std::vector<Element>> rho_matrix(const Bundle& b, const std::string& rep,
                                             const Element& p) {
  const auto& rd = b.rep(rep);
  std::vector<std::vector<Element>> out(
      static_cast<size_t>(rd.dsize()),
      std::vector<Element>(static_cast<size_t>(rd.dsize()), b.forms()->zero()));
  for (int k = 0; k < rd.dsize(); ++k)
    for (int l = 0; l < rd.dsize(); ++l)
      for (int i = 0; i < rd.n(); ++i)
        out[static_cast<size_t>(k)][static_cast<size_t>(l)] +=
            rd.X[static_cast<size_t>(k)][static_cast<size_t>(i)] * p *
            rd.X[static_cast<size_t>(l)][static_cast<size_t>(i)].star();
  return out;
}

Section unitary_pullback(const std::vector<std::vector<Scalar>>& f, const std::string& from_rep,
                         const Section& T) {
  const auto& target = rep_of(T.b, T.rep);
  const auto& source = rep_of(T.b, from_rep);
  int nb = target.n(), na = source.n();
  if (static_cast<int>(f.size()) != nb)
    fail(Errc::DimensionMismatch, "pullback matrix rows != target dimension");
  for (const auto& row : f)
    if (static_cast<int>(row.size()) != na)
      fail(Errc::DimensionMismatch, "pullback matrix columns != source dimension");
  // unitarity: f-dagger f = Id
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      Scalar s = Scalar::zero();
      for (int k = 0; k < nb; ++k)
        s += f[static_cast<size_t>(k)][static_cast<size_t>(i)].conj() *
             f[static_cast<size_t>(k)][static_cast<size_t>(j)];
      if (!(s == (i == j ? Scalar::one() : Scalar::zero())))
        fail(Errc::NotUnitary, "pullback morphism is not unitary");
    }
  Section out{T.b, from_rep,
              std::vector<Element>(static_cast<size_t>(na), T.b->forms()->zero())};
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      out.values[static_cast<size_t>(i)] +=
          T.values[static_cast<size_t>(j)] * f[static_cast<size_t>(j)][static_cast<size_t>(i)];
  return out;
}

}  // namespace qb

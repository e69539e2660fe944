#include "qb/examples.hpp"

#include "qb/parse.hpp"

namespace qb {

const char* kMatrix2BaseText = R"(
[algebra matrix2-forms]
generators = s1:0:s1, s2:0:s2, s3:0:s3, t1:1:t1, t2:1:t2, t3:1:t3
rules = s1 s1 -> 1; s1 s2 -> i s3; s1 s3 -> -i s2; s2 s1 -> -i s3; s2 s2 -> 1; s2 s3 -> i s1; s3 s1 -> i s2; s3 s2 -> -i s1; s3 s3 -> 1; t1 s1 -> s1 t1; t1 s2 -> s2 t1; t1 s3 -> s3 t1; t2 s1 -> s1 t2; t2 s2 -> s2 t2; t2 s3 -> s3 t2; t3 s1 -> s1 t3; t3 s2 -> s2 t3; t3 s3 -> s3 t3; t1 t1 -> 0; t2 t1 -> -t1 t2; t2 t2 -> 0; t3 t1 -> -t1 t3; t3 t2 -> -t2 t3; t3 t3 -> 0

[d]
d s1 = -s3 t2 + s2 t3
d s2 = s3 t1 - s1 t3
d s3 = -s2 t1 + s1 t2
d t1 = -t2 t3
d t2 = t1 t3
d t3 = -t1 t2
)";

const Connection& Example::connection(const std::string& n) const {
  auto it = connections.find(n);
  if (it == connections.end())
    fail(Errc::UnknownQuantity, "no connection named " + n + " on " + name);
  return it->second;
}

namespace {

Word word_of(std::initializer_list<int> letters) {
  Word w;
  for (int l : letters) w.push_back(static_cast<unsigned char>(l));
  return w;
}

Word pow_word(int letter, int n) {
  Word w;
  for (int k = 0; k < n; ++k) w.push_back(static_cast<unsigned char>(letter));
  return w;
}

// weight-n corepresentation of U(1): the 1x1 matrix (z^n), n may be negative
Corep u1_weight_rep(const HopfAlgebra* H, int n) {
  const Algebra* A = H->alg();
  Element zn = A->monomial(pow_word(n >= 0 ? 0 : 1, std::abs(n)));
  return Corep(H, "n=" + std::to_string(n), {{zn}});
}

}  // namespace

std::shared_ptr<Example> build_trivial_u1(const PresentedDGA& base, int max_weight) {
  auto ex = std::make_shared<Example>();
  ex->G = make_u1_hopf();
  ex->cal = make_u1_classical_calculus(ex->G);
  ex->bundle = make_trivial_bundle("trivial-u1", base, ex->G, ex->cal);
  ex->name = "trivial-u1";
  ex->base_alg = base.alg;
  ex->base_d = base.d_gen;
  ex->gamma_offset = base.alg->num_generators();

  const Algebra* Om = ex->bundle->forms();
  int off = ex->gamma_offset;
  int zl = off + 0, zsl = off + 1, vsl = off + 2;

  for (int n = -max_weight; n <= max_weight; ++n) {
    Bundle::RepData rd{u1_weight_rep(ex->G.get(), n),
                       {{Om->monomial(pow_word(n >= 0 ? zl : zsl, std::abs(n)))}},
                       {Scalar::one()},
                       {{Scalar::one()}}};
    std::string rep_name = "n=" + std::to_string(n);
    ex->bundle->register_rep(rep_name, std::move(rd));
    ex->bundle->map_coefficient(pow_word(n >= 0 ? 0 : 1, std::abs(n)), rep_name, 0, 0);
  }

  // omega_triv(vs) = the vertical generator
  std::vector<Element> triv = {Om->generator(vsl)};
  ex->connections.emplace("triv", Connection(ex->bundle.get(), "triv", triv));
  if (base.alg->num_generators() >= 6) {
    // real gauge potential mu = i theta^3 and an imaginary displacement
    Element mu = Scalar::i() * Om->generator(5);
    ex->connections.emplace(
        "potential", ex->connection("triv").displaced("potential", {mu}));
    ex->connections.emplace("potential-imag", ex->connection("triv").displaced(
                                                  "potential-imag", {Scalar::i() * mu}));
  }
  return ex;
}

std::shared_ptr<Example> build_trivial_u1() {
  ParsedPresentation pp = parse_presentation(kMatrix2BaseText);
  return build_trivial_u1({pp.algebra, pp.d_gen});
}

std::shared_ptr<Example> build_trivial_u1_point() {
  auto ex = build_trivial_u1(make_point_dga());
  ex->name = "trivial-u1-point";
  return ex;
}

std::shared_ptr<Example> build_hopf_fibration(int max_weight) {
  auto ex = std::make_shared<Example>();
  ex->name = "hopf-fibration";
  ex->total_hopf = make_su_q2_hopf();
  ex->total_cal = make_su_q2_3d_calculus(ex->total_hopf);
  ex->total_env = std::make_shared<Envelope>(ex->total_cal);
  ex->G = make_u1_hopf();
  ex->cal = make_u1_q2_calculus(ex->G);

  const Algebra* Gu = ex->G->alg();
  // projection alpha -> z, gamma -> 0
  std::vector<Element> proj = {Gu->generator(0), Gu->generator(1), Gu->zero(), Gu->zero()};

  // base recognizer: weight 0 and no vertical letter
  const Algebra* Om = ex->total_env->alg();
  int eta0 = ex->total_env->theta_letter(0);
  std::vector<int> wt(static_cast<size_t>(Om->num_generators()), 0);
  wt[0] = 1;   // alpha
  wt[1] = -1;  // alpha*
  wt[2] = 1;   // gamma
  wt[3] = -1;  // gamma*
  wt[static_cast<size_t>(ex->total_env->theta_letter(1))] = 2;   // eta+
  wt[static_cast<size_t>(ex->total_env->theta_letter(2))] = -2;  // eta-
  auto base_decl = [wt, eta0](const Element& w) {
    for (const auto& [word, c] : w.terms()) {
      int weight = 0;
      for (unsigned char l : word) {
        if (static_cast<int>(l) == eta0) return false;
        weight += wt[l];
      }
      if (weight != 0) return false;
    }
    return true;
  };

  ex->bundle = make_homogeneous_bundle("hopf-fibration", ex->total_hopf, ex->total_env, ex->G,
                                       ex->cal, proj, base_decl);

  // spin-|n|/2 first/last column data: products of the fundamental column
  // (alpha, gamma) for n > 0 and of (-q gamma*, alpha*) for n < 0. Using the
  // 2^|n| tensor-power words keeps all coefficients inside Q(i)(q).
  Element a = Om->generator(0), as = Om->generator(1), c = Om->generator(2),
          cs = Om->generator(3);
  for (int n = -max_weight; n <= max_weight; ++n) {
    int len = std::abs(n);
    std::vector<std::vector<Element>> X;
    std::vector<Scalar> Z;
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      Element v = Om->unit();
      int lowers = 0;
      for (int p = 0; p < len; ++p) {
        bool lower = (mask >> p) & 1u;
        if (lower) ++lowers;
        if (n > 0)
          v = v * (lower ? c : a);
        else
          v = v * (lower ? (-Scalar::q()) * cs : as);
      }
      X.push_back({v});
      Z.push_back(Scalar::q(n > 0 ? 2 * lowers : -2 * lowers));
    }
    Bundle::RepData rd{u1_weight_rep(ex->G.get(), n), std::move(X), std::move(Z),
                       {{Scalar::one()}}};
    std::string rep_name = "n=" + std::to_string(n);
    ex->bundle->register_rep(rep_name, std::move(rd));
    ex->bundle->map_coefficient(pow_word(n >= 0 ? 0 : 1, len), rep_name, 0, 0);
  }

  // canonical connection and a displaced one
  Element e0 = Om->generator(eta0);
  ex->connections.emplace("c", Connection(ex->bundle.get(), "c", {e0}));
  Element lambda = cs * cs * Om->generator(ex->total_env->theta_letter(1));
  ex->connections.emplace("c-displaced",
                          ex->connection("c").displaced("c-displaced", {lambda}));
  return ex;
}

std::shared_ptr<Example> build_dunkl_rank1(const Scalar& kappa) {
  auto ex = std::make_shared<Example>();
  ex->name = "dunkl-rank1";
  ex->kappa = kappa;
  ex->G = make_z2_hopf();
  ex->cal = make_z2_universal_calculus(ex->G);
  auto env = std::make_shared<Envelope>(ex->cal);

  auto Om = std::make_shared<Algebra>("dunkl-forms");
  int x = Om->add_generator("x", 0);
  int xi = Om->add_generator("xinv", 0, 1, "x⁻¹");
  int s = Om->add_generator("s", 0);
  int h = Om->add_generator("dx", 1);
  int v = Om->add_generator("v", 1);
  for (int g : {x, xi, s, h}) Om->set_star(g, g);
  Om->set_star(v, v, Scalar(-1));
  Scalar one = Scalar::one();
  Om->add_rule(word_of({xi, x}), Om->unit());
  Om->add_rule(word_of({x, xi}), Om->unit());
  Om->add_rule(word_of({s, s}), Om->unit());
  Om->add_rule(word_of({s, x}), Om->monomial(word_of({x, s})));
  Om->add_rule(word_of({s, xi}), Om->monomial(word_of({xi, s})));
  Om->add_rule(word_of({h, x}), Om->monomial(word_of({x, h})));
  Om->add_rule(word_of({h, xi}), Om->monomial(word_of({xi, h})));
  Om->add_rule(word_of({h, s}), Om->monomial(word_of({s, h})));
  Om->add_rule(word_of({h, h}), Om->zero());
  Om->add_rule(word_of({v, x}), Om->monomial(word_of({x, v}), -one));
  Om->add_rule(word_of({v, xi}), Om->monomial(word_of({xi, v}), -one));
  Om->add_rule(word_of({v, s}), Om->monomial(word_of({s, v}), -one));
  Om->add_rule(word_of({v, h}), Om->monomial(word_of({h, v})));
  Om->finalize();

  Element X = Om->generator(x), XI = Om->generator(xi), S = Om->generator(s),
          H = Om->generator(h), V = Om->generator(v);
  std::vector<Element> d_table(5, Om->zero());
  d_table[static_cast<size_t>(x)] = H + X * V;
  d_table[static_cast<size_t>(xi)] = -(XI * XI * H) + XI * V;
  d_table[static_cast<size_t>(s)] = S * V;
  d_table[static_cast<size_t>(h)] = -(H * V);
  d_table[static_cast<size_t>(v)] = -(V * V);

  const Algebra* Ga = env->alg();
  Word th = pow_word(env->theta_letter(0), 1);
  auto odd_psi = [&](const Element& gen) {
    Tensor out({Om.get(), Ga});
    for (const auto& [w, c] : gen.terms()) out.add_term({w, pow_word(0, 1)}, c);
    return out;
  };
  std::vector<Tensor> psi_table;
  psi_table.push_back(odd_psi(X));
  psi_table.push_back(odd_psi(XI));
  psi_table.push_back(odd_psi(S));
  psi_table.push_back(odd_psi(H));
  Tensor psi_v({Om.get(), Ga});
  psi_v.add_term({pow_word(v, 1), Word()}, Scalar::one());
  psi_v.add_term({Word(), th}, Scalar::one());
  psi_table.push_back(std::move(psi_v));

  // parity: every letter except v is odd under the deck transformation
  auto base_decl = [v](const Element& w) {
    for (const auto& [word, c] : w.terms()) {
      int parity = 0;
      for (unsigned char l : word) {
        if (static_cast<int>(l) == v) return false;
        parity ^= 1;
      }
      if (parity != 0) return false;
    }
    return true;
  };

  ex->bundle = std::make_shared<Bundle>("dunkl-rank1", ex->G, ex->cal, env, Om,
                                        std::move(d_table), std::move(psi_table), base_decl);

  const Algebra* Gz = ex->G->alg();
  Element t = Gz->generator(0);
  ex->bundle->register_rep(
      "triv", Bundle::RepData{Corep(ex->G.get(), "triv", {{Gz->unit()}}),
                              {{Om->unit()}},
                              {Scalar::one()},
                              {{Scalar::one()}}});
  ex->bundle->register_rep("sign", Bundle::RepData{Corep(ex->G.get(), "sign", {{t}}),
                                                   {{S}},
                                                   {Scalar::one()},
                                                   {{Scalar::one()}}});
  ex->bundle->map_coefficient(Word(), "triv", 0, 0);
  ex->bundle->map_coefficient(pow_word(0, 1), "sign", 0, 0);

  ex->connections.emplace("c", Connection(ex->bundle.get(), "c", {V}));
  Element disp = Scalar(-2) * kappa * (XI * H);
  ex->connections.emplace("dunkl", ex->connection("c").displaced("dunkl", {disp}));
  ex->connections.emplace(
      "dunkl-real", ex->connection("c").displaced("dunkl-real", {Scalar::i() * disp}));
  return ex;
}

namespace {

// the classical gauge pullback on a trivial U(1) bundle for a unitary base
// element p: mu z^k vs^e -> mu p^k z^k (p* dp + vs)^e
std::function<Element(const Element&)> unitary_weight_action(const Example& ex, const Element& p,
                                                             bool invert) {
  const Algebra* Om = ex.bundle->forms();
  int zl = ex.gamma_offset, zsl = ex.gamma_offset + 1, vsl = ex.gamma_offset + 2;
  Element shift = p.star() * ex.bundle->d(p);
  return [Om, p, shift, zl, zsl, vsl, invert](const Element& w) {
    Element out(Om);
    for (const auto& [word, c] : w.terms()) {
      Word base, zpart;
      int k = 0, e = 0;
      for (unsigned char l : word) {
        if (static_cast<int>(l) == zl) {
          ++k;
          zpart.push_back(l);
        } else if (static_cast<int>(l) == zsl) {
          --k;
          zpart.push_back(l);
        } else if (static_cast<int>(l) == vsl) {
          e = 1;
        } else {
          base.push_back(l);
        }
      }
      if (invert) k = -k;
      Element pk = Om->unit();
      for (int j = 0; j < std::abs(k); ++j) pk = pk * (k > 0 ? p : p.star());
      Element mu = Om->monomial(base, c);
      Element zmono = Om->monomial(zpart);
      if (e == 0) {
        out += mu * pk * zmono;
      } else if (!invert) {
        out += mu * pk * zmono * (shift + Om->generator(vsl));
      } else {
        out += mu * pk * zmono * Om->generator(vsl) - mu * shift * pk * zmono;
      }
    }
    return out;
  };
}

// vertical-shift gauge transformation: kills degree 0 to the counit and sends
// g theta to eps(g) lambda for a base 1-form lambda
Qgt vertical_shift_qgt(const Example& ex, const std::string& name, const Element& lambda) {
  const Algebra* Ga = ex.bundle->gamma()->alg();
  const Algebra* Om = ex.bundle->forms();
  std::map<Word, Element> tab, itab;
  for (const auto& w : gamma_spanning(*ex.bundle, 6)) {
    if (Ga->word_degree(w) == 0) {
      Scalar e = ex.bundle->gamma()->eps(Ga->monomial(w));
      tab[w] = Om->unit() * e;
      itab[w] = Om->unit() * e;
    } else {
      Word gpart = w.substr(0, w.size() - 1);
      Scalar e = ex.G->counit(ex.G->alg()->monomial(gpart));
      tab[w] = lambda * e;
      itab[w] = -lambda * e;
    }
  }
  return Qgt(ex.bundle.get(), name, std::move(tab), std::move(itab));
}

void register_gauge_fixtures(Example& ex) {
  const Algebra* Om = ex.bundle->forms();
  if (ex.G->alg()->num_generators() == 2) {  // U(1) structure group
    ex.characters.emplace_back(ex.G.get(), "chi_i",
                               std::vector<Scalar>{Scalar::i(), -Scalar::i()});
    ex.characters.emplace_back(ex.G.get(), "chi_-1",
                               std::vector<Scalar>{-Scalar::one(), -Scalar::one()});
  } else {
    ex.characters.emplace_back(ex.G.get(), "sign-char", std::vector<Scalar>{-Scalar::one()});
    ex.characters.emplace_back(ex.G.get(), "triv-char", std::vector<Scalar>{Scalar::one()});
  }
  for (const auto& chi : ex.characters)
    ex.qgts.emplace(chi.name(), char_to_gauge(*ex.bundle, chi));

  if (ex.name == "trivial-u1") {
    Scalar half = (Scalar::one() + Scalar::i()) * Scalar::rational(1, 2);
    Element p = half * Om->unit() + half.conj() * Om->generator(2);
    ex.qgts.emplace("unitary-p",
                    qgt_from_F(*ex.bundle, ex.connection("triv"), "unitary-p",
                               unitary_weight_action(ex, p, false),
                               unitary_weight_action(ex, p, true), 4));
  } else if (ex.name == "hopf-fibration") {
    Element mu =
        Om->generator(3) * Om->generator(3) * Om->generator(ex.total_env->theta_letter(1));
    ex.qgts.emplace("vertical-shift", vertical_shift_qgt(ex, "vertical-shift", mu));
  } else if (ex.name == "dunkl-rank1") {
    Element lambda = Scalar(-2) * ex.kappa * (Om->generator(1) * Om->generator(3));
    ex.qgts.emplace("dunkl-shift", vertical_shift_qgt(ex, "dunkl-shift", lambda));
  }
}

}  // namespace

std::shared_ptr<Example> build_example(const std::string& name, const Scalar& kappa) {
  std::shared_ptr<Example> ex;
  if (name == "trivial-u1")
    ex = build_trivial_u1();
  else if (name == "trivial-u1-point")
    ex = build_trivial_u1_point();
  else if (name == "hopf-fibration")
    ex = build_hopf_fibration();
  else if (name == "dunkl-rank1")
    ex = build_dunkl_rank1(kappa);
  else
    fail(Errc::UnknownExample, "unknown example " + name);
  register_gauge_fixtures(*ex);
  return ex;
}

std::vector<std::string> example_names() {
  return {"trivial-u1", "trivial-u1-point", "hopf-fibration", "dunkl-rank1"};
}

std::vector<Element> potential_decompose(const Example& ex, const Connection& omega) {
  if (!ex.is_trivial()) fail(Errc::NotTrivialBundle, ex.name + " is not a trivial bundle");
  const Connection& triv = ex.connection("triv");
  std::vector<Element> A;
  for (int i = 0; i < ex.cal->dim(); ++i) {
    Element a = omega.value(i) - triv.value(i);
    if (!ex.bundle->is_base(a))
      fail(Errc::NotAConnection, "potential of " + omega.name() + " is not a base form");
    A.push_back(a);
  }
  return A;
}

std::vector<Element> field_strength(const Example& ex, const std::vector<Element>& A) {
  if (!ex.is_trivial()) fail(Errc::NotTrivialBundle, ex.name + " is not a trivial bundle");
  int m = ex.cal->dim();
  std::vector<Element> F;
  for (int i = 0; i < m; ++i) {
    InvForm e = ex.cal->zero_form();
    e[static_cast<size_t>(i)] = Scalar::one();
    Element f = ex.bundle->d(A[static_cast<size_t>(i)]);
    auto mat = ex.cal->delta(e);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const Scalar& c = mat[static_cast<size_t>(j)][static_cast<size_t>(k)];
        if (c.is_zero()) continue;
        f -= A[static_cast<size_t>(j)] * A[static_cast<size_t>(k)] * c;
      }
    F.push_back(f);
  }
  return F;
}

}  // namespace qb

#include "qb/presentations.hpp"

namespace qb {

std::shared_ptr<Algebra> make_u1_algebra() {
  auto A = std::make_shared<Algebra>("U(1)");
  int z = A->add_generator("z", 0);
  int zs = A->add_generator("z*", 0);
  A->set_star(z, zs);
  A->set_star(zs, z);
  Word w;
  w.push_back(static_cast<unsigned char>(z));
  w.push_back(static_cast<unsigned char>(zs));
  A->add_rule(w, A->unit());
  Word w2;
  w2.push_back(static_cast<unsigned char>(zs));
  w2.push_back(static_cast<unsigned char>(z));
  A->add_rule(w2, A->unit());
  A->finalize();
  return A;
}

namespace {
Word w1(int a) {
  Word w;
  w.push_back(static_cast<unsigned char>(a));
  return w;
}
Word w2(int a, int b) {
  Word w = w1(a);
  w.push_back(static_cast<unsigned char>(b));
  return w;
}
}  // namespace

std::shared_ptr<Algebra> make_su_q2_algebra() {
  auto A = std::make_shared<Algebra>("SU_q(2)");
  int a = A->add_generator("alpha", 0, 2, "α");
  int as = A->add_generator("alpha*", 0, 2, "α*");
  int c = A->add_generator("gamma", 0, 1, "γ");
  int cs = A->add_generator("gamma*", 0, 1, "γ*");
  A->set_star(a, as);
  A->set_star(as, a);
  A->set_star(c, cs);
  A->set_star(cs, c);
  Scalar q = Scalar::q();
  // alpha gamma = q gamma alpha, alpha gamma* = q gamma* alpha, gamma gamma* = gamma* gamma,
  // alpha* alpha + gamma* gamma = 1, alpha alpha* + q^2 gamma gamma* = 1
  A->add_rule(w2(c, a), A->monomial(w2(a, c), q.inverse()));
  A->add_rule(w2(cs, a), A->monomial(w2(a, cs), q.inverse()));
  A->add_rule(w2(c, as), A->monomial(w2(as, c), q));
  A->add_rule(w2(cs, as), A->monomial(w2(as, cs), q));
  A->add_rule(w2(cs, c), A->monomial(w2(c, cs)));
  A->add_rule(w2(as, a), A->unit() - A->monomial(w2(c, cs)));
  A->add_rule(w2(a, as), A->unit() - A->monomial(w2(c, cs), q * q));
  A->finalize();
  return A;
}

std::shared_ptr<Algebra> make_z2_algebra() {
  auto A = std::make_shared<Algebra>("C[Z/2]");
  int t = A->add_generator("t", 0);
  A->set_star(t, t);
  A->add_rule(w2(t, t), A->unit());
  A->finalize();
  return A;
}

PresentedDGA make_matrix2_dga() {
  auto A = std::make_shared<Algebra>("M2(C)-forms");
  int s[3], t[3];
  for (int k = 0; k < 3; ++k)
    s[k] = A->add_generator("s" + std::to_string(k + 1), 0, 1,
                            std::string("σ") + char('1' + k));
  for (int k = 0; k < 3; ++k)
    t[k] = A->add_generator("t" + std::to_string(k + 1), 1, 1,
                            std::string("θ") + char('1' + k));
  for (int k = 0; k < 3; ++k) {
    A->set_star(s[k], s[k]);
    A->set_star(t[k], t[k]);
  }
  Scalar i = Scalar::i();
  // Pauli products: s_a s_b = delta_ab + i eps_abc s_c
  auto eps = [](int a, int b, int c) -> int {
    if (a == b || b == c || a == c) return 0;
    return ((b - a + 3) % 3 == 1) ? 1 : -1;
  };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Element rhs(A.get());
      if (a == b) {
        rhs = A->unit();
      } else {
        int c = 3 - a - b;
        int sign = eps(a, b, c);
        rhs = A->monomial(w1(s[c]), i * Scalar(sign));
      }
      A->add_rule(w2(s[a], s[b]), rhs);
    }
  // t central among the Pauli letters, anticommuting among themselves
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) A->add_rule(w2(t[a], s[b]), A->monomial(w2(s[b], t[a])));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b <= a; ++b) {
      if (a == b)
        A->add_rule(w2(t[a], t[a]), A->zero());
      else
        A->add_rule(w2(t[a], t[b]), A->monomial(w2(t[b], t[a]), Scalar(-1)));
    }
  A->finalize();

  std::vector<Element> d(static_cast<size_t>(A->num_generators()), A->zero());
  // d s_a = eps_{bac} s_c t_b ; d t_c = -(1/2) eps_{abc} t_a t_b
  for (int a = 0; a < 3; ++a) {
    Element v(A.get());
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      int c = 3 - a - b;
      int sign = eps(b, a, c);
      v += A->monomial(w2(s[c], t[b]), Scalar(sign));
    }
    d[static_cast<size_t>(s[a])] = v;
  }
  for (int c = 0; c < 3; ++c) {
    int a = (c + 1) % 3, b = (c + 2) % 3;
    d[static_cast<size_t>(t[c])] = A->monomial(w2(t[a], t[b]), Scalar(-1));
  }
  return {A, d};
}

PresentedDGA make_point_dga() {
  auto A = std::make_shared<Algebra>("C");
  A->finalize();
  return {A, {}};
}

std::shared_ptr<Algebra> make_sign_laurent_algebra() {
  auto A = std::make_shared<Algebra>("C[x,x^-1,sign]");
  int x = A->add_generator("x", 0);
  int xi = A->add_generator("xinv", 0, 1, "x⁻¹");
  int s = A->add_generator("s", 0);
  A->set_star(x, x);
  A->set_star(xi, xi);
  A->set_star(s, s);
  A->add_rule(w2(xi, x), A->unit());
  A->add_rule(w2(x, xi), A->unit());
  A->add_rule(w2(s, s), A->unit());
  A->add_rule(w2(s, x), A->monomial(w2(x, s)));
  A->add_rule(w2(s, xi), A->monomial(w2(xi, s)));
  A->finalize();
  return A;
}

Element graded_derivative(const std::vector<Element>& d_gen, const Element& x) {
  const Algebra* A = x.algebra();
  Element out(A);
  for (const auto& [w, c] : x.terms()) {
    int sign_deg = 0;
    for (size_t k = 0; k < w.size(); ++k) {
      const Element& dg = d_gen[w[k]];
      if (!dg.is_zero()) {
        Element term = A->monomial(w.substr(0, k), c) * dg * A->monomial(w.substr(k + 1));
        if (sign_deg % 2 != 0) term = -term;
        out += term;
      }
      sign_deg += A->gen(w[k]).degree;
    }
  }
  return out;
}

}  // namespace qb

#include "qb/scalar.hpp"

#include <cctype>
#include <sstream>

namespace qb {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NonTerminatingOrder: return "NonTerminatingOrder";
    case Errc::StarMismatch: return "StarMismatch";
    case Errc::RewriteBudgetExceeded: return "RewriteBudgetExceeded";
    case Errc::UnknownSubalgebra: return "UnknownSubalgebra";
    case Errc::NoHopfStructure: return "NoHopfStructure";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::GradeOverflow: return "GradeOverflow";
    case Errc::MissingDelta: return "MissingDelta";
    case Errc::NotAConnection: return "NotAConnection";
    case Errc::NotHorizontal: return "NotHorizontal";
    case Errc::NotIntertwiner: return "NotIntertwiner";
    case Errc::RepresentationMismatch: return "RepresentationMismatch";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotCovariant: return "NotCovariant";
    case Errc::CentralityViolated: return "CentralityViolated";
    case Errc::NotDifferentialMorphism: return "NotDifferentialMorphism";
    case Errc::NotTrivialBundle: return "NotTrivialBundle";
    case Errc::UnknownExample: return "UnknownExample";
    case Errc::UnknownQuantity: return "UnknownQuantity";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

GaussRat GaussRat::operator/(const GaussRat& o) const {
  if (o.is_zero()) fail(Errc::DivisionByZero, "division by zero in Q(i)");
  mpq_class n2 = o.re * o.re + o.im * o.im;
  return {(re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2};
}

static std::string mpq_str(const mpq_class& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string GaussRat::str() const {
  if (im == 0) return mpq_str(re);
  std::string istr = (im == 1) ? "i" : (im == -1) ? "-i" : mpq_str(im) + "i";
  if (re == 0) return istr;
  if (im > 0) return mpq_str(re) + "+" + istr;
  return mpq_str(re) + istr;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::q_pow(int k) {
  Poly p;
  p.c_.assign(static_cast<size_t>(k) + 1, GaussRat());
  p.c_[static_cast<size_t>(k)] = GaussRat(1);
  return p;
}

void Poly::set_coeff(int k, GaussRat v) {
  if (k >= static_cast<int>(c_.size())) c_.resize(static_cast<size_t>(k) + 1);
  c_[static_cast<size_t>(k)] = std::move(v);
  trim();
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < r.c_.size(); ++k)
    r.c_[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, GaussRat());
  for (size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (size_t b = 0; b < o.c_.size(); ++b) r.c_[a + b] = r.c_[a + b] + c_[a] * o.c_[b];
  }
  r.trim();
  return r;
}

Poly Poly::conj() const {
  Poly r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

void Poly::divrem(const Poly& a, const Poly& d, Poly& quo, Poly& rem) {
  if (d.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  quo = Poly();
  rem = a;
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int k = rem.degree() - d.degree();
    GaussRat c = rem.lead() / d.lead();
    Poly shift = Poly::q_pow(k);
    Poly t = Poly(c) * shift;
    quo = quo + t;
    rem = rem - t * d;
  }
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divrem(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  GaussRat inv = GaussRat(1) / lead();
  for (auto& c : r.c_) c = c * inv;
  return r;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    GaussRat c = coeff(k);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = false;
    if (!cs.empty() && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
        cs.find('-', 1) == std::string::npos) {
      neg = true;
      cs = cs.substr(1);
    }
    std::string mono;
    if (k == 0) {
      mono = cs;
    } else {
      std::string qq = (k == 1) ? "q" : "q^" + std::to_string(k);
      if (cs == "1")
        mono = qq;
      else if (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos)
        mono = "(" + (neg ? "-" + cs : cs) + ")" + qq, neg = false;
      else
        mono = cs + qq;
    }
    if (out.empty())
      out = (neg ? "-" : "") + mono;
    else
      out += (neg ? " - " : " + ") + mono;
  }
  return out;
}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(Errc::DivisionByZero, "zero denominator");
  reduce();
}

void Scalar::reduce() {
  if (num_.is_zero()) {
    den_ = Poly(GaussRat(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divrem(num_, g, q, r);
    num_ = q;
    Poly::divrem(den_, g, q, r);
    den_ = q;
  }
  GaussRat lc = den_.lead();
  if (!(lc == GaussRat(1))) {
    GaussRat inv = GaussRat(1) / lc;
    num_ = num_ * Poly(inv);
    den_ = den_ * Poly(inv);
  }
}

Scalar Scalar::q(int pow) {
  if (pow >= 0) return Scalar(Poly::q_pow(pow), Poly(GaussRat(1)));
  return Scalar(Poly(GaussRat(1)), Poly::q_pow(-pow));
}

Scalar Scalar::rational(long num, long den) {
  return Scalar(GaussRat(mpq_class(num, den), mpq_class(0)));
}

bool Scalar::is_one() const { return num_ == Poly(GaussRat(1)) && den_ == Poly(GaussRat(1)); }

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const { return Scalar(num_ * o.num_, den_ * o.den_); }

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) fail(Errc::DivisionByZero, "scalar division by zero");
  return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::conj() const {
  Scalar r;
  r.num_ = num_.conj();
  r.den_ = den_.conj();
  r.reduce();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
  return Scalar(den_, num_);
}

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar r = Scalar::one();
  Scalar b = *this;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string n = num_.str();
  if (den_ == Poly(GaussRat(1))) return n;
  std::string d = den_.str();
  auto needs_paren = [](const std::string& s) {
    return s.find('+') != std::string::npos || s.find(' ') != std::string::npos ||
           (s.find('-', 1) != std::string::npos);
  };
  if (needs_paren(n)) n = "(" + n + ")";
  if (needs_paren(d) || d.find('^') != std::string::npos || d.find('q') != std::string::npos)
    d = "(" + d + ")";
  return n + "/" + d;
}

// --- tiny recursive-descent parser: integers, i, q, + - * / ^ ( ) ---

namespace {

struct ScalarLexer {
  const std::string& s;
  size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  char get() {
    char c = peek();
    if (pos < s.size()) ++pos;
    return c;
  }
};

Scalar parse_expr(ScalarLexer& lx);

Scalar parse_atom(ScalarLexer& lx) {
  char c = lx.peek();
  if (c == '(') {
    lx.get();
    Scalar v = parse_expr(lx);
    if (lx.get() != ')') fail(Errc::ParseError, "expected ')' in scalar expression");
    return v;
  }
  if (c == 'i') {
    lx.get();
    return Scalar::i();
  }
  if (c == 'q') {
    lx.get();
    return Scalar::q();
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::string digits;
    while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
      digits += lx.s[lx.pos++];
    return Scalar(std::stol(digits));
  }
  fail(Errc::ParseError, std::string("unexpected character '") + c + "' in scalar expression");
}

Scalar parse_power(ScalarLexer& lx) {
  Scalar base = parse_atom(lx);
  if (lx.peek() == '^') {
    lx.get();
    bool neg = false;
    if (lx.peek() == '-') {
      lx.get();
      neg = true;
    }
    std::string digits;
    lx.skip();
    while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
      digits += lx.s[lx.pos++];
    if (digits.empty()) fail(Errc::ParseError, "expected integer exponent");
    int e = std::stoi(digits);
    return base.pow(neg ? -e : e);
  }
  return base;
}

bool starts_atom(char c) {
  return c == '(' || c == 'i' || c == 'q' || std::isdigit(static_cast<unsigned char>(c));
}

Scalar parse_product(ScalarLexer& lx) {
  Scalar v = parse_power(lx);
  for (;;) {
    char c = lx.peek();
    if (c == '*') {
      lx.get();
      v = v * parse_power(lx);
    } else if (c == '/') {
      lx.get();
      v = v / parse_power(lx);
    } else if (starts_atom(c)) {
      v = v * parse_power(lx);  // juxtaposition
    } else {
      return v;
    }
  }
}

Scalar parse_expr(ScalarLexer& lx) {
  bool neg = false;
  if (lx.peek() == '-') {
    lx.get();
    neg = true;
  } else if (lx.peek() == '+') {
    lx.get();
  }
  Scalar v = parse_product(lx);
  if (neg) v = -v;
  for (;;) {
    char c = lx.peek();
    if (c == '+') {
      lx.get();
      v = v + parse_product(lx);
    } else if (c == '-') {
      lx.get();
      v = v - parse_product(lx);
    } else {
      return v;
    }
  }
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  ScalarLexer lx{text};
  Scalar v = parse_expr(lx);
  lx.skip();
  if (lx.pos != text.size()) fail(Errc::ParseError, "trailing input in scalar expression");
  return v;
}

Scalar q_int(int n, int e) {
  Scalar sum = Scalar::zero();
  for (int k = 0; k < n; ++k) sum += Scalar::q(e * k);
  return sum;
}

Scalar q_binom(int n, int k, int e) {
  if (k < 0 || k > n) return Scalar::zero();
  Scalar num = Scalar::one(), den = Scalar::one();
  for (int j = 1; j <= k; ++j) {
    num = num * q_int(n - j + 1, e);
    den = den * q_int(j, e);
  }
  return num / den;
}

}  // namespace qb

#include "qb/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qb {

namespace {

struct Tok {
  enum Kind { Ident, Number, Sym, End } kind = End;
  std::string text;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string s) : s_(std::move(s)) { advance(); }
  const Tok& peek() const { return tok_; }
  Tok get() {
    Tok t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::ParseError, "line " + std::to_string(tok_.line + 1) + ", column " +
                               std::to_string(tok_.col + 1) + ": " + msg);
  }

 private:
  static bool ident_start(unsigned char c) { return std::isalpha(c) || c >= 0x80 || c == '_'; }
  static bool ident_cont(unsigned char c) { return std::isalnum(c) || c >= 0x80 || c == '_'; }
  void advance() {
    while (pos_ < s_.size()) {
      unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (c == '\n') {
        ++line_;
        colbase_ = pos_ + 1;
        ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = static_cast<int>(pos_ - colbase_);
    if (pos_ >= s_.size()) {
      tok_ = {Tok::End, "", line_, tok_.col};
      return;
    }
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (std::isdigit(c)) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      tok_.kind = Tok::Number;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    if (ident_start(c)) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size() && ident_cont(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '*') ++pos_;  // star names like z*
      tok_.kind = Tok::Ident;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    // two-character arrow
    if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
      tok_ = {Tok::Sym, "->", line_, tok_.col};
      pos_ += 2;
      return;
    }
    tok_.kind = Tok::Sym;
    tok_.text = std::string(1, s_[pos_]);
    ++pos_;
  }

  std::string s_;
  size_t pos_ = 0;
  size_t colbase_ = 0;
  int line_ = 0;
  Tok tok_;
};

class ExprParser {
 public:
  ExprParser(const Algebra* A, Lexer& lx) : A_(A), lx_(lx) {}

  Element parse_product_public() { return parse_product(); }

  Element parse_sum() {
    Element acc = parse_signed();
    for (;;) {
      const Tok& t = lx_.peek();
      if (t.kind == Tok::Sym && (t.text == "+" || t.text == "-")) {
        std::string op = lx_.get().text;
        Element rhs = parse_product();
        acc = (op == "+") ? acc + rhs : acc - rhs;
      } else {
        return acc;
      }
    }
  }

 private:
  Element parse_signed() {
    const Tok& t = lx_.peek();
    if (t.kind == Tok::Sym && t.text == "-") {
      lx_.get();
      return -parse_product();
    }
    if (t.kind == Tok::Sym && t.text == "+") lx_.get();
    return parse_product();
  }

  bool starts_atom() {
    const Tok& t = lx_.peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Ident) return true;
    if (t.kind == Tok::Sym && t.text == "(") return true;
    return false;
  }

  Element parse_product() {
    Element acc = parse_power();
    while (starts_atom()) acc = acc * parse_power();
    return acc;
  }

  Element parse_power() {
    Element base = parse_atom();
    if (lx_.peek().kind == Tok::Sym && lx_.peek().text == "^") {
      lx_.get();
      bool neg = false;
      if (lx_.peek().kind == Tok::Sym && lx_.peek().text == "-") {
        lx_.get();
        neg = true;
      }
      if (lx_.peek().kind != Tok::Number) lx_.error("expected integer exponent");
      int e = std::stoi(lx_.get().text);
      if (neg) {
        // negative powers only for single invertible generators via name^-1
        lx_.error("negative exponents are not supported in element expressions");
      }
      Element out = A_->unit();
      for (int k = 0; k < e; ++k) out = out * base;
      return out;
    }
    return base;
  }

  Element parse_atom() {
    Tok t = lx_.get();
    if (t.kind == Tok::Number) return A_->unit() * Scalar(std::stol(t.text));
    if (t.kind == Tok::Sym && t.text == "(") {
      Element inner = parse_sum();
      if (!(lx_.peek().kind == Tok::Sym && lx_.peek().text == ")"))
        lx_.error("expected ')'");
      lx_.get();
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "i" && A_->gen_index("i") < 0) return A_->unit() * Scalar::i();
      if (t.text == "q" && A_->gen_index("q") < 0) return A_->unit() * Scalar::q();
      int g = A_->gen_index(t.text);
      if (g >= 0) return A_->generator(g);
      lx_.error("unknown generator '" + t.text + "' in " + A_->name());
    }
    lx_.error("unexpected token '" + t.text + "'");
  }

  const Algebra* A_;
  Lexer& lx_;
};

Element parse_expr_until(const Algebra* A, Lexer& lx) {
  ExprParser p(A, lx);
  return A->normal_form(p.parse_sum());
}

}  // namespace

Element parse_element(const Algebra* A, const std::string& text) {
  Lexer lx(text);
  Element e = parse_expr_until(A, lx);
  if (lx.peek().kind != Tok::End) lx.error("trailing input in expression");
  return e;
}

Tensor parse_tensor(const Algebra* A, const std::string& text) {
  // split on top-level + and -, each summand has legs separated by @
  Tensor out({A, A});
  Lexer lx(text);
  for (;;) {
    Scalar sign = Scalar::one();
    if (lx.peek().kind == Tok::Sym && lx.peek().text == "-") {
      lx.get();
      sign = -sign;
    } else if (lx.peek().kind == Tok::Sym && lx.peek().text == "+") {
      lx.get();
    }
    ExprParser p(A, lx);
    Element left = A->normal_form(p.parse_product_public());
    if (!(lx.peek().kind == Tok::Sym && lx.peek().text == "@"))
      lx.error("expected '@' in tensor expression");
    lx.get();
    ExprParser p2(A, lx);
    Element right = A->normal_form(p2.parse_product_public());
    out.add_product_term({left, right}, sign);
    if (lx.peek().kind == Tok::End) return out;
    if (!(lx.peek().kind == Tok::Sym &&
          (lx.peek().text == "+" || lx.peek().text == "-")))
      lx.error("expected '+', '-' or end of tensor expression");
  }
}

namespace {

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct Line {
  int number;
  std::string text;
};

}  // namespace

ParsedPresentation parse_presentation(const std::string& text) {
  ParsedPresentation out;
  // split into sections
  std::vector<std::pair<std::string, std::vector<Line>>> sections;
  {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = trim(raw);
      size_t hash = line.find('#');
      if (hash != std::string::npos) line = trim(line.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        size_t close = line.find(']');
        if (close == std::string::npos)
          fail(Errc::ParseError, "line " + std::to_string(lineno) + ": unterminated section");
        sections.emplace_back(trim(line.substr(1, close - 1)), std::vector<Line>{});
      } else {
        if (sections.empty())
          fail(Errc::ParseError, "line " + std::to_string(lineno) + ": content before a section");
        sections.back().second.push_back({lineno, line});
      }
    }
  }

  auto line_fail = [](const Line& l, const std::string& msg) {
    fail(Errc::ParseError, "line " + std::to_string(l.number) + ": " + msg);
  };

  // [algebra <name>] must come first
  std::shared_ptr<Algebra> A;
  for (const auto& [header, lines] : sections) {
    auto words = split_top(header, ' ');
    std::string kind = words.empty() ? "" : trim(words[0]);
    if (kind == "algebra") {
      if (A) fail(Errc::ParseError, "duplicate [algebra] section");
      std::string name = words.size() > 1 ? trim(header.substr(kind.size())) : "user";
      A = std::make_shared<Algebra>(name);
      // collect key = value lines (value may span until next key)
      std::map<std::string, std::pair<Line, std::string>> keys;
      for (const auto& l : lines) {
        size_t eq = l.text.find('=');
        if (eq == std::string::npos) line_fail(l, "expected key = value");
        keys[trim(l.text.substr(0, eq))] = {l, trim(l.text.substr(eq + 1))};
      }
      if (!keys.count("generators")) fail(Errc::ParseError, "[algebra] needs generators =");
      struct GenDecl {
        std::string name;
        int degree;
        std::string star;
        int weight;
      };
      std::vector<GenDecl> decls;
      for (const auto& item : split_top(keys["generators"].second, ',')) {
        auto parts = split_top(trim(item), ':');
        if (parts.size() < 3 || parts.size() > 4)
          line_fail(keys["generators"].first, "generator needs name:degree:star[:weight]");
        GenDecl g{trim(parts[0]), std::stoi(trim(parts[1])), trim(parts[2]),
                  parts.size() == 4 ? std::stoi(trim(parts[3])) : 1};
        decls.push_back(std::move(g));
      }
      // declaration order = precedence unless overridden
      if (keys.count("order")) {
        std::vector<GenDecl> reordered;
        for (const auto& nm : split_top(keys["order"].second, ',')) {
          std::string want = trim(nm);
          bool found = false;
          for (const auto& g : decls)
            if (g.name == want) {
              reordered.push_back(g);
              found = true;
            }
          if (!found) line_fail(keys["order"].first, "order lists unknown generator " + want);
        }
        if (reordered.size() != decls.size())
          line_fail(keys["order"].first, "order must list every generator exactly once");
        decls = std::move(reordered);
      }
      for (const auto& g : decls) A->add_generator(g.name, g.degree, g.weight);
      for (size_t k = 0; k < decls.size(); ++k) {
        int partner = A->gen_index(decls[k].star);
        if (partner < 0)
          line_fail(keys["generators"].first, "unknown star partner " + decls[k].star);
        A->set_star(static_cast<int>(k), partner);
      }
      if (keys.count("rules")) {
        for (const auto& rule : split_top(keys["rules"].second, ';')) {
          std::string r = trim(rule);
          if (r.empty()) continue;
          size_t arrow = r.find("->");
          if (arrow == std::string::npos)
            line_fail(keys["rules"].first, "rule needs '->': " + r);
          // left side: a plain word
          Lexer lx(r.substr(0, arrow));
          Word lhs;
          while (lx.peek().kind == Tok::Ident) {
            int g = A->gen_index(lx.get().text);
            if (g < 0) line_fail(keys["rules"].first, "unknown generator in rule: " + r);
            lhs.push_back(static_cast<unsigned char>(g));
          }
          if (lx.peek().kind != Tok::End)
            line_fail(keys["rules"].first, "rule left side must be a word: " + r);
          Element rhs = parse_element(A.get(), trim(r.substr(arrow + 2)));
          A->add_rule(lhs, rhs);
        }
      }
      A->finalize();
      out.algebra = A;
    }
  }
  if (!A) fail(Errc::ParseError, "missing [algebra] section");

  for (const auto& [header, lines] : sections) {
    auto words = split_top(header, ' ');
    std::string kind = words.empty() ? "" : trim(words[0]);
    if (kind == "algebra") continue;
    if (kind == "d" || kind == "bundle") {
      out.d_gen.assign(static_cast<size_t>(A->num_generators()), A->zero());
      for (const auto& l : lines) {
        size_t eq = l.text.find('=');
        if (eq == std::string::npos) line_fail(l, "expected d <gen> = <expr>");
        std::string lhs = trim(l.text.substr(0, eq));
        if (lhs.rfind("d ", 0) != 0) line_fail(l, "expected d <gen> = <expr>");
        int g = A->gen_index(trim(lhs.substr(2)));
        if (g < 0) line_fail(l, "unknown generator in d line");
        out.d_gen[static_cast<size_t>(g)] = parse_element(A.get(), trim(l.text.substr(eq + 1)));
      }
    } else if (kind == "hopf") {
      auto H = std::make_shared<HopfAlgebra>(A);
      std::vector<Tensor> phi(static_cast<size_t>(A->num_generators()), Tensor({A.get(), A.get()}));
      std::vector<Scalar> eps(static_cast<size_t>(A->num_generators()), Scalar::zero());
      std::vector<Element> kap(static_cast<size_t>(A->num_generators()), A->zero());
      std::vector<bool> seen(static_cast<size_t>(A->num_generators()), false);
      for (const auto& l : lines) {
        size_t eq = l.text.find('=');
        if (eq == std::string::npos) line_fail(l, "expected phi|eps|kappa <gen> = ...");
        auto head = split_top(trim(l.text.substr(0, eq)), ' ');
        if (head.size() != 2) line_fail(l, "expected phi|eps|kappa <gen> = ...");
        int g = A->gen_index(trim(head[1]));
        if (g < 0) line_fail(l, "unknown generator " + head[1]);
        std::string rhs = trim(l.text.substr(eq + 1));
        if (head[0] == "phi") {
          phi[static_cast<size_t>(g)] = parse_tensor(A.get(), rhs);
          seen[static_cast<size_t>(g)] = true;
        } else if (head[0] == "eps") {
          eps[static_cast<size_t>(g)] = Scalar::parse(rhs);
        } else if (head[0] == "kappa") {
          kap[static_cast<size_t>(g)] = parse_element(A.get(), rhs);
        } else {
          line_fail(l, "unknown hopf key " + head[0]);
        }
      }
      for (int g = 0; g < A->num_generators(); ++g) {
        if (!seen[static_cast<size_t>(g)])
          fail(Errc::ParseError, "[hopf] is missing phi for generator " + A->gen(g).name);
        H->set_tables(g, phi[static_cast<size_t>(g)], eps[static_cast<size_t>(g)],
                      kap[static_cast<size_t>(g)]);
      }
      out.hopf = H;
    } else if (kind == "corep") {
      ParsedPresentation::CorepDecl decl;
      decl.name = words.size() > 1 ? trim(header.substr(kind.size())) : "corep";
      int dim = -1;
      for (const auto& l : lines) {
        size_t eq = l.text.find('=');
        if (eq == std::string::npos) line_fail(l, "expected key = value");
        std::string key = trim(l.text.substr(0, eq));
        std::string val = trim(l.text.substr(eq + 1));
        if (key == "dim") {
          dim = std::stoi(val);
        } else if (key == "matrix") {
          if (val.size() < 2 || val.front() != '[' || val.back() != ']')
            line_fail(l, "matrix = [[...],[...]]");
          for (const auto& row : split_top(val.substr(1, val.size() - 2), ',')) {
            std::string r = trim(row);
            if (r.size() < 2 || r.front() != '[' || r.back() != ']')
              line_fail(l, "matrix rows need brackets");
            std::vector<Element> entries;
            for (const auto& cell : split_top(r.substr(1, r.size() - 2), ';'))
              entries.push_back(parse_element(A.get(), trim(cell)));
            decl.matrix.push_back(std::move(entries));
          }
        } else {
          line_fail(l, "unknown corep key " + key);
        }
      }
      if (dim >= 0 && static_cast<int>(decl.matrix.size()) != dim)
        fail(Errc::ParseError, "corep " + decl.name + ": dim does not match the matrix");
      out.coreps.push_back(std::move(decl));
    } else if (kind == "fodc") {
      out.has_fodc = true;
      for (const auto& l : lines) {
        size_t eq = l.text.find('=');
        if (eq == std::string::npos) line_fail(l, "expected key = value");
        std::string key = trim(l.text.substr(0, eq));
        std::string val = trim(l.text.substr(eq + 1));
        if (key == "ideal") {
          for (const auto& item : split_top(val, ';'))
            if (!trim(item).empty()) out.ideal.push_back(parse_element(A.get(), trim(item)));
        } else if (key == "basis") {
          for (const auto& item : split_top(val, ','))
            out.theta_names.push_back(trim(item));
        } else if (key == "preimages") {
          for (const auto& item : split_top(val, ';'))
            out.preimages.push_back(parse_element(A.get(), trim(item)));
        } else {
          line_fail(l, "unknown fodc key " + key);
        }
      }
    } else {
      fail(Errc::ParseError, "unknown section [" + header + "]");
    }
  }
  return out;
}

ParsedPresentation parse_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

}  // namespace qb

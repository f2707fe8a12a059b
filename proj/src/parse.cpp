#include "ezdkit/parse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>

#include "ezdkit/algebra.hpp"

namespace ezdkit {

namespace {

struct Token {
  enum Kind { Ident, Int, Punct, Newline, End } kind = End;
  std::string text;
  mpz_class ival;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  bool at_punct(char c) const { return tok_.kind == Token::Punct && tok_.text[0] == c; }

private:
  void advance() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') { step(); continue; }
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') step();
        continue;
      }
      break;
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) { tok_.kind = Token::End; tok_.text = "<eof>"; return; }
    char c = s_[pos_];
    if (c == '\n') {
      step();
      tok_.kind = Token::Newline;
      tok_.text = "<newline>";
      return;
    }
    if (isdigit((unsigned char)c)) {
      std::string num;
      while (pos_ < s_.size() && isdigit((unsigned char)s_[pos_])) { num += s_[pos_]; step(); }
      tok_.kind = Token::Int;
      tok_.text = num;
      tok_.ival = mpz_class(num, 10); // base fixed: leading zeros are not octal
      return;
    }
    if (isalpha((unsigned char)c) || c == '_') {
      std::string id;
      while (pos_ < s_.size() && (isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
        id += s_[pos_];
        step();
      }
      tok_.kind = Token::Ident;
      tok_.text = id;
      return;
    }
    static const std::string puncts = "=()^*+-,;/";
    if (puncts.find(c) != std::string::npos) {
      step();
      tok_.kind = Token::Punct;
      tok_.text = std::string(1, c);
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void step() {
    if (s_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

struct Ast {
  enum Kind { Num, Var, Add, Sub, Mul, Neg, Pow } kind;
  mpq_class num;
  std::string name;
  std::unique_ptr<Ast> l, r;
  long exp = 0;
  int line = 1, col = 1;
};
using AstPtr = std::unique_ptr<Ast>;

[[noreturn]] void expected(const Token& t, const std::string& what) {
  throw ParseError(t.line, t.col, "expected " + what + ", got '" + t.text + "'");
}

AstPtr parse_expr(Lexer& lx);

AstPtr parse_atom(Lexer& lx) {
  Token t = lx.peek();
  auto node = std::make_unique<Ast>();
  node->line = t.line;
  node->col = t.col;
  if (t.kind == Token::Int) {
    lx.take();
    mpz_class num = t.ival, den = 1;
    if (lx.at_punct('/')) {
      lx.take();
      Token d = lx.take();
      if (d.kind != Token::Int) expected(d, "denominator");
      den = d.ival;
      if (den == 0) throw ParseError(d.line, d.col, "zero denominator");
    }
    node->kind = Ast::Num;
    node->num = mpq_class(num, den);
    node->num.canonicalize();
    return node;
  }
  if (t.kind == Token::Ident) {
    lx.take();
    node->kind = Ast::Var;
    node->name = t.text;
    return node;
  }
  if (t.kind == Token::Punct && t.text[0] == '(') {
    lx.take();
    AstPtr inner = parse_expr(lx);
    if (!lx.at_punct(')')) expected(lx.peek(), "')'");
    lx.take();
    return inner;
  }
  expected(t, "a number, variable or '('");
}

AstPtr parse_power(Lexer& lx) {
  AstPtr base = parse_atom(lx);
  while (lx.at_punct('^')) {
    lx.take();
    Token e = lx.take();
    if (e.kind != Token::Int) expected(e, "integer exponent");
    if (e.ival < 0 || e.ival > 64)
      throw ParseError(e.line, e.col, "exponent out of range [0, 64]");
    auto node = std::make_unique<Ast>();
    node->kind = Ast::Pow;
    node->l = std::move(base);
    node->exp = e.ival.get_si();
    node->line = e.line;
    node->col = e.col;
    base = std::move(node);
  }
  return base;
}

AstPtr parse_unary(Lexer& lx) {
  if (lx.at_punct('-')) {
    Token t = lx.take();
    auto node = std::make_unique<Ast>();
    node->kind = Ast::Neg;
    node->l = parse_unary(lx);
    node->line = t.line;
    node->col = t.col;
    return node;
  }
  if (lx.at_punct('+')) {
    lx.take();
    return parse_unary(lx);
  }
  return parse_power(lx);
}

AstPtr parse_product(Lexer& lx) {
  AstPtr lhs = parse_unary(lx);
  while (lx.at_punct('*')) {
    Token t = lx.take();
    auto node = std::make_unique<Ast>();
    node->kind = Ast::Mul;
    node->l = std::move(lhs);
    node->r = parse_unary(lx);
    node->line = t.line;
    node->col = t.col;
    lhs = std::move(node);
  }
  return lhs;
}

AstPtr parse_expr(Lexer& lx) {
  AstPtr lhs = parse_product(lx);
  while (lx.at_punct('+') || lx.at_punct('-')) {
    Token t = lx.take();
    auto node = std::make_unique<Ast>();
    node->kind = t.text[0] == '+' ? Ast::Add : Ast::Sub;
    node->l = std::move(lhs);
    node->r = parse_product(lx);
    node->line = t.line;
    node->col = t.col;
    lhs = std::move(node);
  }
  return lhs;
}

// ---- symbolic evaluation into PolyExpr (for relations) ----

using TermMap = std::map<std::vector<int>, FElem>;

TermMap tm_add(const Field& F, const TermMap& a, const TermMap& b, bool negate_b) {
  TermMap r = a;
  for (const auto& [m, c] : b) {
    FElem cc = negate_b ? F.neg(c) : c;
    auto it = r.find(m);
    if (it == r.end()) r.emplace(m, cc);
    else it->second = F.add(it->second, cc);
  }
  for (auto it = r.begin(); it != r.end();)
    it = F.is_zero(it->second) ? r.erase(it) : std::next(it);
  return r;
}

TermMap tm_mul(const Field& F, const TermMap& a, const TermMap& b) {
  TermMap r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<int> m(ma.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      FElem c = F.mul(ca, cb);
      auto it = r.find(m);
      if (it == r.end()) r.emplace(std::move(m), c);
      else it->second = F.add(it->second, c);
    }
  for (auto it = r.begin(); it != r.end();)
    it = F.is_zero(it->second) ? r.erase(it) : std::next(it);
  return r;
}

TermMap eval_sym(const Ast& n, const Field& F, const std::vector<std::string>& vars) {
  const int e = (int)vars.size();
  switch (n.kind) {
    case Ast::Num: {
      FElem c = F.from_fraction(n.num);
      TermMap r;
      if (!F.is_zero(c)) r.emplace(std::vector<int>(e, 0), c);
      return r;
    }
    case Ast::Var: {
      auto it = std::find(vars.begin(), vars.end(), n.name);
      if (it == vars.end())
        throw ParseError(n.line, n.col, "unknown variable '" + n.name + "'");
      std::vector<int> m(e, 0);
      m[it - vars.begin()] = 1;
      TermMap r;
      r.emplace(std::move(m), F.one());
      return r;
    }
    case Ast::Add: return tm_add(F, eval_sym(*n.l, F, vars), eval_sym(*n.r, F, vars), false);
    case Ast::Sub: return tm_add(F, eval_sym(*n.l, F, vars), eval_sym(*n.r, F, vars), true);
    case Ast::Mul: return tm_mul(F, eval_sym(*n.l, F, vars), eval_sym(*n.r, F, vars));
    case Ast::Neg: {
      TermMap r = eval_sym(*n.l, F, vars);
      for (auto& [m, c] : r) c = F.neg(c);
      return r;
    }
    case Ast::Pow: {
      TermMap base = eval_sym(*n.l, F, vars);
      TermMap acc;
      acc.emplace(std::vector<int>(e, 0), F.one());
      for (long i = 0; i < n.exp; ++i) acc = tm_mul(F, acc, base);
      return acc;
    }
  }
  throw ParseError(n.line, n.col, "internal: bad ast node");
}

PolyExpr to_poly(const TermMap& tm, int line, int col) {
  PolyExpr p;
  int deg = -1;
  for (const auto& [m, c] : tm) {
    int d = 0;
    for (int x : m) d += x;
    if (deg < 0) deg = d;
    else if (d != deg)
      throw Error(Err::NonHomogeneousRelation,
                  "relation at " + std::to_string(line) + ":" + std::to_string(col) +
                      " mixes degrees " + std::to_string(deg) + " and " + std::to_string(d));
    p.terms.push_back({c, m});
  }
  if (deg <= 0)
    throw Error(Err::NonHomogeneousRelation,
                "relation at " + std::to_string(line) + ":" + std::to_string(col) +
                    (deg < 0 ? " is identically zero" : " is a nonzero constant"));
  p.degree = deg;
  return p;
}

// ---- field spec sub-parser ----

FieldSpec parse_fieldspec_tokens(Lexer& lx) {
  Token t = lx.take();
  if (t.kind != Token::Ident) expected(t, "GF or QQ");
  if (t.text == "QQ") return FieldSpec::rationals();
  if (t.text != "GF") expected(t, "GF or QQ");
  if (!lx.at_punct('(')) expected(lx.peek(), "'('");
  lx.take();
  Token pt = lx.take();
  if (pt.kind != Token::Int) expected(pt, "a prime");
  if (pt.ival > 1000000000) throw ParseError(pt.line, pt.col, "prime too large");
  std::uint64_t p = pt.ival.get_ui();
  if (lx.at_punct(')')) {
    lx.take();
    return FieldSpec::prime(p);
  }
  if (!lx.at_punct('^')) expected(lx.peek(), "')' or '^'");
  lx.take();
  Token nt = lx.take();
  if (nt.kind != Token::Int) expected(nt, "extension degree");
  long n = nt.ival.get_si();
  if (!lx.at_punct(';')) expected(lx.peek(), "';' and a modulus polynomial");
  lx.take();
  // modulus over a single fresh identifier, integer coefficients
  AstPtr mod_ast = parse_expr(lx);
  if (!lx.at_punct(')')) expected(lx.peek(), "')'");
  lx.take();
  std::vector<std::string> gen_names;
  std::function<void(const Ast&)> collect = [&](const Ast& a) {
    if (a.kind == Ast::Var && std::find(gen_names.begin(), gen_names.end(), a.name) == gen_names.end())
      gen_names.push_back(a.name);
    if (a.l) collect(*a.l);
    if (a.r) collect(*a.r);
  };
  collect(*mod_ast);
  if (gen_names.size() != 1)
    throw ParseError(nt.line, nt.col, "modulus must use exactly one variable");
  FieldPtr Fp = Field::make(FieldSpec::prime(p));
  TermMap tm = eval_sym(*mod_ast, *Fp, gen_names);
  std::vector<std::uint64_t> coeffs;
  for (const auto& [m, c] : tm) {
    int d = m[0];
    if (d >= (int)coeffs.size()) coeffs.resize(d + 1, 0);
    coeffs[d] = std::get<std::uint64_t>(c.v);
  }
  if ((int)coeffs.size() - 1 != n)
    throw ParseError(nt.line, nt.col, "modulus degree does not match the declared degree");
  return FieldSpec::extension(p, coeffs, gen_names[0]);
}

} // namespace

FieldSpec parse_fieldspec(const std::string& text) {
  Lexer lx(text);
  FieldSpec s = parse_fieldspec_tokens(lx);
  while (lx.peek().kind == Token::Newline) lx.take();
  if (lx.peek().kind != Token::End) expected(lx.peek(), "end of field spec");
  return s;
}

PresentationSource parse_presentation(const std::string& text) {
  Lexer lx(text);
  PresentationSource src;
  bool have_field = false, have_vars = false, have_relations = false;

  auto skip_newlines = [&] {
    while (lx.peek().kind == Token::Newline) lx.take();
  };

  skip_newlines();
  while (lx.peek().kind != Token::End) {
    Token kw = lx.take();
    if (kw.kind != Token::Ident) expected(kw, "a statement keyword");
    if (!lx.at_punct('=')) expected(lx.peek(), "'='");
    lx.take();

    if (kw.text == "field") {
      if (have_field) throw ParseError(kw.line, kw.col, "duplicate field statement");
      src.fspec = parse_fieldspec_tokens(lx);
      src.field = Field::make(src.fspec);
      have_field = true;
    } else if (kw.text == "vars") {
      if (have_vars) throw ParseError(kw.line, kw.col, "duplicate vars statement");
      while (lx.peek().kind == Token::Ident) {
        Token v = lx.take();
        if (std::find(src.vars.begin(), src.vars.end(), v.text) != src.vars.end())
          throw Error(Err::DuplicateVariable, "variable '" + v.text + "' declared twice");
        src.vars.push_back(v.text);
      }
      if (src.vars.empty()) expected(lx.peek(), "at least one variable");
      have_vars = true;
    } else if (kw.text == "relations") {
      if (have_relations) throw ParseError(kw.line, kw.col, "duplicate relations statement");
      if (!have_field || !have_vars)
        throw ParseError(kw.line, kw.col, "field and vars must be declared before relations");
      if (src.fspec.kind == FieldSpec::Kind::Extension &&
          std::find(src.vars.begin(), src.vars.end(), src.fspec.gen_name) != src.vars.end())
        throw Error(Err::DuplicateVariable,
                    "extension generator '" + src.fspec.gen_name + "' collides with a variable");
      for (;;) {
        skip_newlines();
        Token at = lx.peek();
        AstPtr ast = parse_expr(lx);
        src.relations.push_back(to_poly(eval_sym(*ast, *src.field, src.vars), at.line, at.col));
        if (lx.at_punct(',')) { lx.take(); continue; }
        break;
      }
      have_relations = true;
    } else if (kw.text == "degree_cap") {
      Token n = lx.take();
      if (n.kind != Token::Int) expected(n, "an integer");
      long cap = n.ival.get_si();
      if (cap < 1 || cap > 32) throw ParseError(n.line, n.col, "degree_cap out of range [1, 32]");
      src.degree_cap = (int)cap;
    } else {
      throw ParseError(kw.line, kw.col, "unknown statement '" + kw.text + "'");
    }
    if (lx.peek().kind != Token::End && lx.peek().kind != Token::Newline)
      expected(lx.peek(), "end of statement");
    skip_newlines();
  }
  if (!have_field) throw ParseError(1, 1, "missing field statement");
  if (!have_vars) throw ParseError(1, 1, "missing vars statement");
  return src;
}

namespace {

AElem eval_in_algebra(const Ast& n, const AlgebraPtr& A) {
  const GradedAlgebra& R = *A;
  const Field& F = *R.field();
  switch (n.kind) {
    case Ast::Num: return R.scalar(F.from_fraction(n.num));
    case Ast::Var: {
      const auto& vars = R.var_names();
      auto it = std::find(vars.begin(), vars.end(), n.name);
      if (it != vars.end()) return R.var(int(it - vars.begin()));
      if (R.source().fspec.kind == FieldSpec::Kind::Extension &&
          n.name == R.source().fspec.gen_name)
        return R.scalar(F.generator());
      throw Error(Err::UnknownVariable, "unknown variable '" + n.name + "' at " +
                                            std::to_string(n.line) + ":" + std::to_string(n.col));
    }
    case Ast::Add: return R.add(eval_in_algebra(*n.l, A), eval_in_algebra(*n.r, A));
    case Ast::Sub: return R.sub(eval_in_algebra(*n.l, A), eval_in_algebra(*n.r, A));
    case Ast::Mul: return R.multiply(eval_in_algebra(*n.l, A), eval_in_algebra(*n.r, A));
    case Ast::Neg: return R.neg(eval_in_algebra(*n.l, A));
    case Ast::Pow: return R.power(eval_in_algebra(*n.l, A), (int)n.exp);
  }
  throw ParseError(n.line, n.col, "internal: bad ast node");
}

} // namespace

AElem parse_element(const std::string& text, const AlgebraPtr& A) {
  Lexer lx(text);
  while (lx.peek().kind == Token::Newline) lx.take();
  AstPtr ast = parse_expr(lx);
  while (lx.peek().kind == Token::Newline) lx.take();
  if (lx.peek().kind != Token::End) expected(lx.peek(), "end of expression");
  return eval_in_algebra(*ast, A);
}

std::vector<std::vector<AElem>> parse_matrix_rows(const std::string& text, const AlgebraPtr& A) {
  Lexer lx(text);
  std::vector<std::vector<AElem>> rows;
  std::vector<AElem> cur;
  bool expect_entry = false; // a pending comma demands one more entry

  auto flush_row = [&](const Token& where) {
    if (expect_entry)
      fail(Err::RaggedRows, "missing entry after ',' at " + std::to_string(where.line) + ":" +
                                std::to_string(where.col));
    if (!cur.empty()) {
      rows.push_back(cur);
      cur.clear();
    }
  };

  for (;;) {
    while (lx.peek().kind == Token::Newline || lx.at_punct(';')) {
      Token sep = lx.take();
      flush_row(sep);
    }
    if (lx.peek().kind == Token::End) {
      flush_row(lx.peek());
      break;
    }
    AstPtr ast = parse_expr(lx);
    cur.push_back(eval_in_algebra(*ast, A));
    expect_entry = false;
    if (lx.at_punct(',')) {
      lx.take();
      expect_entry = true;
    }
  }
  if (!rows.empty()) {
    size_t w = rows[0].size();
    for (const auto& r : rows)
      if (r.size() != w)
        fail(Err::RaggedRows, "matrix rows have different lengths");
  }
  return rows;
}

} // namespace ezdkit

#include "cfdtm/cli/dsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cfdtm/series.hpp"

namespace cfdtm::cli {

std::string format_diagnostic(const ParseDiagnostic& d) {
  std::ostringstream os;
  if (d.line == 0) {
    os << "equation: " << d.message;
  } else {
    os << d.line << ':' << d.column << ": " << d.message;
  }
  if (!d.expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < d.expected.size(); ++i) {
      if (i > 0) os << (i + 1 == d.expected.size() ? " or " : ", ");
      os << d.expected[i];
    }
    os << ')';
  }
  return os.str();
}

namespace {

std::string num(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), end};
}

enum class Tok {
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Caret,
  Slash,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Equals,
  End,
  Invalid,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double value = 0.0;
  bool integral = false;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Number: return "number '" + t.text + "'";
    case Tok::Ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  const auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(src.data() + i, src.data() + src.size(), v);
      if (ptr == src.data() + i) {
        t.kind = Tok::Invalid;
        t.text = std::string(1, c);
        out.push_back(std::move(t));
        return out;
      }
      if (ec != std::errc()) {
        t.kind = Tok::Invalid;
        t.text = std::string(src.substr(i, static_cast<std::size_t>(ptr - (src.data() + i))));
        out.push_back(std::move(t));
        return out;
      }
      const std::size_t n = static_cast<std::size_t>(ptr - (src.data() + i));
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, n));
      t.value = v;
      t.integral = std::all_of(t.text.begin(), t.text.end(),
                               [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
      advance(n);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (i + n < src.size() && std::isalpha(static_cast<unsigned char>(src[i + n]))) ++n;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, n));
      advance(n);
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '^': t.kind = Tok::Caret; break;
      case '/': t.kind = Tok::Slash; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '[': t.kind = Tok::LBracket; break;
      case ']': t.kind = Tok::RBracket; break;
      case '=': t.kind = Tok::Equals; break;
      default: t.kind = Tok::Invalid; break;
    }
    t.text = std::string(1, c);
    advance(1);
    out.push_back(std::move(t));
    if (out.back().kind == Tok::Invalid) return out;
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

struct ParseFailure {
  ParseDiagnostic diag;
};

const std::vector<std::string> kAtomStart = {"number", "'y'",   "'D['", "'t'",  "'exp('",
                                             "'sin('", "'cos('", "'('",  "'-'"};

constexpr int kMaxDepth = 200;

// Semantic context for inline checks; absent when parsing without an alpha.
struct OrderContext {
  double alpha;
  double beta_max;
  long s_max;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<ParseDiagnostic> semantic;

  DslAst equation(std::optional<double> alpha) {
    DslAst ast;
    std::vector<Token> term_starts;
    bool negate = accept(Tok::Minus);
    term_starts.push_back(peek());
    ast.lhs.push_back(term(negate));
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      negate = next().kind == Tok::Minus;
      term_starts.push_back(peek());
      ast.lhs.push_back(term(negate));
    }
    expect(Tok::Equals, {"'+'", "'-'", "'='"});
    if (alpha) ctx_ = check_lhs(ast.lhs, term_starts, *alpha);
    ast.rhs = expr(0);
    if (peek().kind != Tok::End) {
      fail(peek(), "unexpected " + describe(peek()), {"'+'", "'-'", "'*'", "end of input"});
    }
    return ast;
  }

  Expr function_spec() {
    const Token start = peek();
    Expr e = atom(0);
    if (e.kind() != ExprKind::ExpSrc && e.kind() != ExprKind::SinSrc &&
        e.kind() != ExprKind::CosSrc && e.kind() != ExprKind::Monomial) {
      fail(start, "expected a known function", {"'exp('", "'sin('", "'cos('", "'t'"});
    }
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()), {"end of input"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() {
    Token t = toks_[pos_];
    if (t.kind != Tok::End && t.kind != Tok::Invalid) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const Token& at, std::string msg, std::vector<std::string> expected) {
    if (at.kind == Tok::Invalid) {
      msg = at.text.size() > 1 ? "number out of range '" + at.text + "'"
                               : "unexpected character '" + at.text + "'";
    }
    throw ParseFailure{{at.line, at.column, std::move(msg), std::move(expected)}};
  }

  Token expect(Tok k, std::vector<std::string> expected) {
    if (peek().kind != k) fail(peek(), "unexpected " + describe(peek()), std::move(expected));
    return next();
  }

  void expect_ident(std::string_view name) {
    const std::string quoted = "'" + std::string(name) + "'";
    if (peek().kind != Tok::Ident || peek().text != name) {
      fail(peek(), "unexpected " + describe(peek()), {quoted});
    }
    next();
  }

  double signed_number() {
    const bool neg = accept(Tok::Minus);
    const Token t = expect(Tok::Number, {"number"});
    return neg ? -t.value : t.value;
  }

  void note(const Token& at, std::string msg) {
    semantic.push_back({at.line, at.column, std::move(msg), {}});
  }

  // "D[" number "]" "y" after the D identifier has been consumed.
  double deriv_order() {
    expect(Tok::LBracket, {"'['"});
    const double beta = signed_number();
    expect(Tok::RBracket, {"']'"});
    expect_ident("y");
    return beta;
  }

  LhsTerm term(bool negate) {
    LhsTerm t;
    if (peek().kind == Tok::Number) {
      t.coeff = next().value;
      expect(Tok::Star, {"'*'"});
    }
    if (negate) t.coeff = -t.coeff;
    if (peek().kind == Tok::Ident && peek().text == "D") {
      next();
      t.order = deriv_order();
    } else if (peek().kind == Tok::Ident && peek().text == "y") {
      next();
    } else {
      fail(peek(), "unexpected " + describe(peek()), {"number", "'D['", "'y'"});
    }
    return t;
  }

  std::optional<OrderContext> check_lhs(const std::vector<LhsTerm>& lhs,
                                        const std::vector<Token>& starts, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      note(starts.front(), "alpha must lie in (0, 1]");
      return std::nullopt;
    }
    std::optional<std::size_t> top;
    bool tie = false;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      const double order = lhs[i].order.value_or(0.0);
      if (lhs[i].order) {
        const auto s = near_integer(order / alpha);
        if (!(order > 0.0) || !s || *s < 1) {
          note(starts[i], "derivative order " + num(order) +
                              " is not a positive integer multiple of alpha = " + num(alpha));
        }
      }
      if (!top || order > lhs[*top].order.value_or(0.0) + kIntegralityTol) {
        top = i;
        tie = false;
      } else if (std::abs(order - lhs[*top].order.value_or(0.0)) <= kIntegralityTol) {
        tie = true;
      }
    }
    if (!lhs[*top].order) {
      note(starts.front(), "left-hand side needs a derivative term D[beta] y");
      return std::nullopt;
    }
    if (tie) {
      note(starts[*top], "left-hand side must have exactly one highest-order derivative term");
    }
    if (lhs[*top].coeff == 0.0) {
      note(starts[*top], "coefficient of the highest-order term must be nonzero");
    }
    const double beta_max = *lhs[*top].order;
    const auto s_max = near_integer(beta_max / alpha);
    if (!s_max || *s_max < 1) return std::nullopt;
    return OrderContext{alpha, beta_max, *s_max};
  }

  void check_rhs_deriv(const Token& at, double beta) {
    if (!ctx_) return;
    const auto s = near_integer(beta / ctx_->alpha);
    if (!(beta > 0.0) || !s || *s < 1) {
      note(at, "derivative order " + num(beta) + " is not a positive integer multiple of alpha = " +
                   num(ctx_->alpha));
    } else if (*s > ctx_->s_max - 1) {
      note(at, "RHS order must be < principal order " + num(ctx_->beta_max) + " (got D[" +
                   num(beta) + "])");
    }
  }

  void check_monomial(const Token& at, double p) {
    if (!(p >= 0.0)) {
      note(at, "power of t must be >= 0");
    } else if (ctx_ && !near_integer(p / ctx_->alpha)) {
      note(at, "t^" + num(p) + " is not representable: p/alpha is not an integer");
    }
  }

  Expr expr(int depth) {
    Expr lhs = mul(depth);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool plus = next().kind == Tok::Plus;
      Expr rhs = mul(depth);
      lhs = plus ? Expr::add(std::move(lhs), std::move(rhs))
                 : Expr::sub(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr mul(int depth) {
    Expr first = atom(depth);
    if (peek().kind != Tok::Star) return first;
    std::vector<Expr> factors{std::move(first)};
    while (accept(Tok::Star)) factors.push_back(atom(depth));
    return Expr::mul(std::move(factors));
  }

  int exponent() {
    const Token t = expect(Tok::Number, {"integer"});
    if (!t.integral || t.value < 1 || t.value > 64) {
      fail(t, "exponent must be an integer between 1 and 64", {"integer"});
    }
    return static_cast<int>(t.value);
  }

  // "*t^a/a" inside exp/sin/cos.
  void scaled_time() {
    expect(Tok::Star, {"'*'"});
    expect_ident("t");
    expect(Tok::Caret, {"'^'"});
    expect_ident("a");
    expect(Tok::Slash, {"'/'"});
    expect_ident("a");
  }

  Expr atom(int depth) {
    if (depth > kMaxDepth) fail(peek(), "expression nested too deeply", {});
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number: next(); return Expr::constant(t.value);
      case Tok::Minus: next(); return Expr::neg(atom(depth + 1));
      case Tok::LParen: {
        next();
        Expr inner = expr(depth + 1);
        expect(Tok::RParen, {"')'", "'+'", "'-'", "'*'"});
        if (accept(Tok::Caret)) return Expr::pow(std::move(inner), exponent());
        return inner;
      }
      case Tok::Ident: break;
      default: fail(t, "unexpected " + describe(t), kAtomStart);
    }
    next();
    if (t.text == "y") {
      if (accept(Tok::Caret)) return Expr::pow(Expr::unknown(), exponent());
      return Expr::unknown();
    }
    if (t.text == "D") {
      const double beta = deriv_order();
      check_rhs_deriv(t, beta);
      return Expr::deriv(beta);
    }
    if (t.text == "t") {
      double p = 1.0;
      if (accept(Tok::Caret)) p = expect(Tok::Number, {"number"}).value;
      check_monomial(t, p);
      return Expr::monomial(p);
    }
    if (t.text == "exp") {
      expect(Tok::LParen, {"'('"});
      const double lambda = signed_number();
      scaled_time();
      expect(Tok::RParen, {"')'"});
      return Expr::exp_src(lambda);
    }
    if (t.text == "sin" || t.text == "cos") {
      expect(Tok::LParen, {"'('"});
      const double omega = signed_number();
      scaled_time();
      double c = 0.0;
      if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        const bool minus = next().kind == Tok::Minus;
        c = expect(Tok::Number, {"number"}).value;
        if (minus) c = -c;
      }
      expect(Tok::RParen, {"')'", "'+'", "'-'"});
      return t.text == "sin" ? Expr::sin_src(omega, c) : Expr::cos_src(omega, c);
    }
    fail(t, "unknown identifier '" + t.text + "'", kAtomStart);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<OrderContext> ctx_;
};

Expr lhs_term_expr(const LhsTerm& t, double magnitude) {
  Expr body = t.order ? Expr::deriv(*t.order) : Expr::unknown();
  if (magnitude == 1.0) return body;
  return Expr::mul({Expr::constant(magnitude), std::move(body)});
}

}  // namespace

ParseResult lower(const DslAst& ast, double alpha) {
  ParseResult res;
  res.ast = ast;
  const auto diag = [&](std::string msg) { res.diagnostics.push_back({0, 0, std::move(msg), {}}); };

  if (ast.lhs.empty()) {
    diag("left-hand side is empty");
    return res;
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < ast.lhs.size(); ++i) {
    if (ast.lhs[i].order.value_or(0.0) > ast.lhs[top].order.value_or(0.0)) top = i;
  }
  const LhsTerm& principal = ast.lhs[top];
  if (!principal.order) {
    diag("left-hand side needs a derivative term D[beta] y");
    return res;
  }
  for (std::size_t i = 0; i < ast.lhs.size(); ++i) {
    if (i != top && std::abs(ast.lhs[i].order.value_or(0.0) - *principal.order) <= kIntegralityTol) {
      diag("left-hand side must have exactly one highest-order derivative term");
    }
  }
  if (principal.coeff == 0.0) diag("coefficient of the highest-order term must be nonzero");
  if (!res.diagnostics.empty()) return res;

  Expr rhs = ast.rhs;
  for (std::size_t i = 0; i < ast.lhs.size(); ++i) {
    if (i == top) continue;
    const LhsTerm& t = ast.lhs[i];
    if (t.coeff == 0.0) continue;
    rhs = t.coeff > 0.0 ? Expr::sub(std::move(rhs), lhs_term_expr(t, t.coeff))
                        : Expr::add(std::move(rhs), lhs_term_expr(t, -t.coeff));
  }
  if (principal.coeff != 1.0) {
    rhs = Expr::mul({Expr::constant(1.0 / principal.coeff), std::move(rhs)});
  }

  // Order checks that do not need source positions.
  if (alpha > 0.0 && alpha <= 1.0) {
    const auto s_max = near_integer(*principal.order / alpha);
    if (!s_max || *s_max < 1) {
      diag("principal order " + num(*principal.order) +
           " is not a positive integer multiple of alpha = " + num(alpha));
    }
  } else {
    diag("alpha must lie in (0, 1]");
  }
  if (!res.diagnostics.empty()) return res;
  res.equation = LoweredEquation{*principal.order, std::move(rhs)};
  return res;
}

ParseResult parse_equation(std::string_view src, double alpha) {
  ParseResult res;
  Parser parser(lex(src));
  try {
    res.ast = parser.equation(alpha);
  } catch (const ParseFailure& f) {
    res.diagnostics.push_back(f.diag);
    return res;
  }
  if (!parser.semantic.empty()) {
    res.diagnostics = std::move(parser.semantic);
    return res;
  }
  return lower(*res.ast, alpha);
}

FunctionSpecResult parse_function_spec(std::string_view src) {
  FunctionSpecResult res;
  Parser parser(lex(src));
  try {
    res.expr = parser.function_spec();
  } catch (const ParseFailure& f) {
    res.diagnostics.push_back(f.diag);
    return res;
  }
  if (!parser.semantic.empty()) {
    res.diagnostics = std::move(parser.semantic);
    res.expr.reset();
  }
  return res;
}

namespace {

std::string print_expr(const Expr& e);

std::string print_atom(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const:
      return e.param() < 0.0 ? "-" + num(-e.param()) : num(e.param());
    case ExprKind::Unknown: return "y";
    case ExprKind::Deriv: return "D[" + num(e.param()) + "] y";
    case ExprKind::Neg: return "-" + print_atom(e.children()[0]);
    case ExprKind::Pow: {
      const Expr& base = e.children()[0];
      const std::string n = std::to_string(e.exponent());
      if (base.kind() == ExprKind::Unknown) return "y^" + n;
      return "(" + print_expr(base) + ")^" + n;
    }
    case ExprKind::Monomial: return "t^" + num(e.param());
    case ExprKind::ExpSrc: return "exp(" + num(e.param()) + "*t^a/a)";
    case ExprKind::SinSrc:
    case ExprKind::CosSrc: {
      std::string s = (e.kind() == ExprKind::SinSrc ? "sin(" : "cos(") + num(e.param()) + "*t^a/a";
      if (std::signbit(e.phase())) {
        s += " - " + num(-e.phase());
      } else if (e.phase() != 0.0) {
        s += " + " + num(e.phase());
      }
      return s + ")";
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul: return "(" + print_expr(e) + ")";
  }
  return "?";
}

std::string print_mul(const Expr& e) {
  if (e.kind() != ExprKind::Mul) return print_atom(e);
  std::string s;
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    if (i > 0) s += "*";
    s += print_atom(e.children()[i]);
  }
  return s;
}

std::string print_expr(const Expr& e) {
  if (e.kind() == ExprKind::Add || e.kind() == ExprKind::Sub) {
    return print_expr(e.children()[0]) + (e.kind() == ExprKind::Add ? " + " : " - ") +
           print_mul(e.children()[1]);
  }
  return print_mul(e);
}

}  // namespace

std::string to_dsl(const Expr& e) { return print_expr(e); }

std::string to_dsl(const DslAst& ast) {
  std::string s;
  for (std::size_t i = 0; i < ast.lhs.size(); ++i) {
    const LhsTerm& t = ast.lhs[i];
    const bool neg = std::signbit(t.coeff);
    const double mag = std::abs(t.coeff);
    if (i == 0) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    if (mag != 1.0) s += num(mag) + "*";
    s += t.order ? "D[" + num(*t.order) + "] y" : "y";
  }
  return s + " = " + print_expr(ast.rhs);
}

}  // namespace cfdtm::cli

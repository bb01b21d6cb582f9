#include "cfdtm/expr.hpp"

#include <sstream>

namespace cfdtm {

std::string_view to_string(ExprKind kind) {
  switch (kind) {
    case ExprKind::Const: return "Const";
    case ExprKind::Unknown: return "Unknown";
    case ExprKind::Deriv: return "Deriv";
    case ExprKind::Add: return "Add";
    case ExprKind::Sub: return "Sub";
    case ExprKind::Neg: return "Neg";
    case ExprKind::Mul: return "Mul";
    case ExprKind::Pow: return "Pow";
    case ExprKind::Monomial: return "Monomial";
    case ExprKind::ExpSrc: return "ExpSrc";
    case ExprKind::SinSrc: return "SinSrc";
    case ExprKind::CosSrc: return "CosSrc";
  }
  return "?";
}

Expr Expr::constant(double c) { return Expr(Node{ExprKind::Const, c}); }
Expr Expr::unknown() { return Expr(Node{ExprKind::Unknown}); }
Expr Expr::deriv(double beta) { return Expr(Node{ExprKind::Deriv, beta}); }

Expr Expr::add(Expr l, Expr r) {
  return Expr(Node{ExprKind::Add, 0.0, 0.0, 0, {std::move(l), std::move(r)}});
}

Expr Expr::sub(Expr l, Expr r) {
  return Expr(Node{ExprKind::Sub, 0.0, 0.0, 0, {std::move(l), std::move(r)}});
}

Expr Expr::neg(Expr e) { return Expr(Node{ExprKind::Neg, 0.0, 0.0, 0, {std::move(e)}}); }

Expr Expr::mul(std::vector<Expr> factors) {
  return Expr(Node{ExprKind::Mul, 0.0, 0.0, 0, std::move(factors)});
}

Expr Expr::pow(Expr base, int n) {
  return Expr(Node{ExprKind::Pow, 0.0, 0.0, n, {std::move(base)}});
}

Expr Expr::monomial(double p) { return Expr(Node{ExprKind::Monomial, p}); }
Expr Expr::exp_src(double lambda) { return Expr(Node{ExprKind::ExpSrc, lambda}); }
Expr Expr::sin_src(double omega, double c) { return Expr(Node{ExprKind::SinSrc, omega, c}); }
Expr Expr::cos_src(double omega, double c) { return Expr(Node{ExprKind::CosSrc, omega, c}); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.param == y.param && x.phase == y.phase &&
         x.exponent == y.exponent && x.children == y.children;
}

namespace {

void render(std::ostringstream& os, const Expr& e) {
  os << to_string(e.kind());
  switch (e.kind()) {
    case ExprKind::Unknown: return;
    case ExprKind::Const:
    case ExprKind::Deriv:
    case ExprKind::Monomial:
    case ExprKind::ExpSrc: os << '(' << e.param() << ')'; return;
    case ExprKind::SinSrc:
    case ExprKind::CosSrc: os << '(' << e.param() << ", " << e.phase() << ')'; return;
    default: break;
  }
  os << '(';
  bool first = true;
  for (const auto& c : e.children()) {
    if (!first) os << ", ";
    first = false;
    render(os, c);
  }
  if (e.kind() == ExprKind::Pow) os << ", " << e.exponent();
  os << ')';
}

}  // namespace

std::string debug_string(const Expr& e) {
  std::ostringstream os;
  os.precision(17);
  render(os, e);
  return os.str();
}

}  // namespace cfdtm

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cfdtm {

enum class ExprKind {
  Const,
  Unknown,
  Deriv,
  Add,
  Sub,
  Neg,
  Mul,
  Pow,
  Monomial,
  ExpSrc,
  SinSrc,
  CosSrc,
};

std::string_view to_string(ExprKind kind);

/// Right-hand side of an explicit conformable ODE  T_{beta_max} y = rhs.
///
/// Immutable tree with shared children; copying an Expr is cheap. Leaves:
///   Const(c)          c
///   Unknown           y
///   Deriv(beta)       T_beta y
///   Monomial(p)       (t - t0)^p
///   ExpSrc(lambda)    exp(lambda (t - t0)^alpha / alpha)
///   SinSrc(omega, c)  sin(omega (t - t0)^alpha / alpha + c)
///   CosSrc(omega, c)  cos(omega (t - t0)^alpha / alpha + c)
class Expr {
 public:
  static Expr constant(double c);
  static Expr unknown();
  static Expr deriv(double beta);
  static Expr add(Expr l, Expr r);
  static Expr sub(Expr l, Expr r);
  static Expr neg(Expr e);
  static Expr mul(std::vector<Expr> factors);
  static Expr pow(Expr base, int n);
  static Expr monomial(double p);
  static Expr exp_src(double lambda);
  static Expr sin_src(double omega, double c);
  static Expr cos_src(double omega, double c);

  ExprKind kind() const { return node_->kind; }

  // Const value, Deriv beta, Monomial p, ExpSrc lambda, Sin/Cos omega.
  double param() const { return node_->param; }
  // Sin/Cos phase c.
  double phase() const { return node_->phase; }
  // Pow exponent.
  int exponent() const { return node_->exponent; }
  std::span<const Expr> children() const { return node_->children; }

  // Structural equality; doubles compared exactly.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    ExprKind kind;
    double param = 0.0;
    double phase = 0.0;
    int exponent = 0;
    std::vector<Expr> children{};
  };
  explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  std::shared_ptr<const Node> node_;
};

// Debug rendering, e.g. Sub(Const(1), Pow(Unknown, 2)).
std::string debug_string(const Expr& e);

}  // namespace cfdtm

#include "cfdtm/oracle.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cfdtm {

double classical_derivative(const RealFn& f, int n, double t, double step) {
  if (n < 0) throw ArgumentError("derivative order must be >= 0");
  if (n == 0) return f(t);
  const RealFn inner = [&](double x) { return classical_derivative(f, n - 1, x, step); };
  return (inner(t - 2 * step) - 8 * inner(t - step) + 8 * inner(t + step) - inner(t + 2 * step)) /
         (12 * step);
}

double conformable_deriv(const RealFn& f, double beta, double t, double t0,
                         const OracleConfig& cfg) {
  if (!(cfg.h > 0.0) || !(cfg.t_min_offset > 0.0)) {
    throw ArgumentError("oracle step and offset must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ArgumentError("order must be positive");
  const double dt = t - t0;
  if (!(dt >= cfg.t_min_offset)) {
    throw DomainError("conformable derivative requested too close to t0");
  }
  const int m = integer_part(beta);
  const int n = m + 1;
  // Every nesting level reaches 2 steps out; keep the whole stencil above t0.
  double step = std::pow(cfg.h, 1.0 / n) * std::max(1.0, std::abs(t));
  step = std::min(step, dt / (4.0 * n));
  const double frac = beta - m;
  return std::pow(dt, 1.0 - frac) * classical_derivative(f, n, t, step);
}

double evaluate_rhs_at(const Expr& rhs, double t, double alpha, double t0, const RealFn& y,
                       const std::function<double(double, double)>& deriv) {
  const double dt = t - t0;
  const auto recurse = [&](const Expr& e) {
    return evaluate_rhs_at(e, t, alpha, t0, y, deriv);
  };
  switch (rhs.kind()) {
    case ExprKind::Const: return rhs.param();
    case ExprKind::Unknown: return y(t);
    case ExprKind::Deriv: return deriv(rhs.param(), t);
    case ExprKind::Add: return recurse(rhs.children()[0]) + recurse(rhs.children()[1]);
    case ExprKind::Sub: return recurse(rhs.children()[0]) - recurse(rhs.children()[1]);
    case ExprKind::Neg: return -recurse(rhs.children()[0]);
    case ExprKind::Mul: {
      double acc = 1.0;
      for (const auto& c : rhs.children()) acc *= recurse(c);
      return acc;
    }
    case ExprKind::Pow: return std::pow(recurse(rhs.children()[0]), rhs.exponent());
    case ExprKind::Monomial: return std::pow(dt, rhs.param());
    case ExprKind::ExpSrc: return std::exp(rhs.param() * std::pow(dt, alpha) / alpha);
    case ExprKind::SinSrc:
      return std::sin(rhs.param() * std::pow(dt, alpha) / alpha + rhs.phase());
    case ExprKind::CosSrc:
      return std::cos(rhs.param() * std::pow(dt, alpha) / alpha + rhs.phase());
  }
  throw std::logic_error("unhandled expression kind");
}

VerifyReport residual(const OdeProblem& p, const FracSeries& y, std::span<const double> grid,
                      const OracleConfig& cfg) {
  check_grid(grid, y.t0());
  VerifyReport rep;
  rep.points.assign(grid.begin(), grid.end());
  rep.residuals.emplace();
  const RealFn series_fn = [&y](double t) { return evaluate(y, t); };
  const auto deriv = [&](double beta, double t) {
    return conformable_deriv(series_fn, beta, t, y.t0(), cfg);
  };
  for (double t : grid) {
    const double lhs = deriv(p.beta_max, t);
    const double rhs = evaluate_rhs_at(p.rhs, t, p.alpha, p.t0, series_fn, deriv);
    const double r = lhs - rhs;
    rep.series_values.push_back(series_fn(t));
    rep.residuals->push_back(r);
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(r));
  }
  return rep;
}

VerifyReport compare(const OdeProblem& p, const RealFn& exact, std::span<const double> grid) {
  const FracSeries y = solve(p);
  check_grid(grid, y.t0());
  VerifyReport rep;
  rep.points.assign(grid.begin(), grid.end());
  rep.exact_values.emplace();
  for (double t : grid) {
    const double s = evaluate(y, t);
    const double e = exact(t);
    rep.series_values.push_back(s);
    rep.exact_values->push_back(e);
    rep.max_abs_error = std::max(rep.max_abs_error, std::abs(s - e));
  }
  return rep;
}

namespace {

std::string num(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), end};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ExampleEntry> build_registry() {
  std::vector<ExampleEntry> r;

  {
    ExampleEntry e;
    e.id = "example1";
    e.title = "linear decay  y^(a) + y = 0, y(0) = 1";
    e.equation = [](double a) { return "D[" + num(a) + "] y + y = 0"; };
    e.default_alpha = 0.5;
    e.valid_until = [](double) { return kInf; };
    e.exact = [](double a, double t) { return std::exp(-std::pow(t, a) / a); };
    e.problem = [](double a, std::size_t n) {
      return OdeProblem{a, 0.0, a, Expr::neg(Expr::unknown()), {1.0}, n};
    };
    e.check_terms = 30;
    e.check_interval = [](double) { return std::pair{0.0, 0.5}; };
    e.error_tol = 1e-8;
    r.push_back(std::move(e));
  }
  {
    ExampleEntry e;
    e.id = "example2";
    e.title = "Riccati  y^(a) = 1 + 2y + y^2, y(0) = 0";
    e.equation = [](double a) { return "D[" + num(a) + "] y = 1 + 2*y + y^2"; };
    e.note =
        "Recurrence a(k+1)Y(k+1) = delta(k) + 2Y(k) + sum Y(l)Y(k-l), taken from the "
        "equation itself; the copy with -sum and no 2Y(k) belongs to 1 - y^2. "
        "Coefficients are 1/a^k.";
    e.default_alpha = 0.5;
    e.valid_until = [](double a) { return 0.9 * std::pow(a, 1.0 / a); };
    e.exact = [](double a, double t) {
      const double w = std::pow(t, a);
      return w / (a - w);
    };
    e.problem = [](double a, std::size_t n) {
      auto rhs = Expr::add(Expr::add(Expr::constant(1.0),
                                     Expr::mul({Expr::constant(2.0), Expr::unknown()})),
                           Expr::pow(Expr::unknown(), 2));
      return OdeProblem{a, 0.0, a, std::move(rhs), {0.0}, n};
    };
    e.check_terms = 60;
    e.check_interval = [](double a) { return std::pair{0.0, 0.5 * std::pow(a, 1.0 / a)}; };
    e.error_tol = 1e-6;
    r.push_back(std::move(e));
  }
  {
    ExampleEntry e;
    e.id = "example3";
    e.title = "Riccati  y^(a) = 1 - y^2, y(0) = 0";
    e.equation = [](double a) { return "D[" + num(a) + "] y = 1 - y^2"; };
    e.default_alpha = 0.5;
    e.valid_until = [](double) { return kInf; };
    e.exact = [](double a, double t) {
      const double g = std::exp(2.0 * std::pow(t, a) / a);
      return (g - 1.0) / (g + 1.0);
    };
    e.problem = [](double a, std::size_t n) {
      auto rhs = Expr::sub(Expr::constant(1.0), Expr::pow(Expr::unknown(), 2));
      return OdeProblem{a, 0.0, a, std::move(rhs), {0.0}, n};
    };
    e.check_terms = 100;
    e.check_interval = [](double) { return std::pair{0.0, 0.4}; };
    e.error_tol = 1e-6;
    r.push_back(std::move(e));
  }
  {
    ExampleEntry e;
    e.id = "example4";
    e.title = "Bagley-Torvik  y'' + T_1.5 y + y = 1 + t, y(0) = y'(0) = 1";
    e.equation = [](double) { return "1*D[2] y + 1*D[1.5] y + 1*y = 1 + t^1"; };
    e.default_alpha = 0.5;
    e.valid_until = [](double) { return kInf; };
    e.exact = [](double, double t) { return 1.0 + t; };
    e.problem = [](double a, std::size_t n) {
      auto rhs = Expr::sub(
          Expr::sub(Expr::add(Expr::constant(1.0), Expr::monomial(1.0)), Expr::deriv(1.5)),
          Expr::unknown());
      return OdeProblem{a, 0.0, 2.0, std::move(rhs), {1.0, 1.0}, n};
    };
    e.check_terms = 20;
    e.check_interval = [](double) { return std::pair{0.0, 2.0}; };
    e.error_tol = 1e-12;
    r.push_back(std::move(e));
  }
  {
    ExampleEntry e;
    e.id = "example5";
    e.title = "T_1.5 y - T_0.5 y = 0, y(0) = 0, y'(0) = 1";
    e.equation = [](double) { return "D[1.5] y = D[0.5] y"; };
    e.default_alpha = 0.5;
    e.valid_until = [](double) { return kInf; };
    e.exact = [](double, double t) { return std::expm1(t); };
    e.problem = [](double a, std::size_t n) {
      return OdeProblem{a, 0.0, 1.5, Expr::deriv(0.5), {0.0, 1.0}, n};
    };
    e.check_terms = 40;
    e.check_interval = [](double) { return std::pair{0.0, 1.0}; };
    e.error_tol = 1e-8;
    r.push_back(std::move(e));
  }
  return r;
}

const std::vector<ExampleEntry>& registry() {
  static const std::vector<ExampleEntry> r = build_registry();
  return r;
}

}  // namespace

const ExampleEntry& exact_registry(std::string_view id) {
  for (const auto& e : registry()) {
    if (e.id == id) return e;
  }
  throw std::out_of_range("unknown example id '" + std::string(id) + "'");
}

std::span<const ExampleEntry> all_examples() { return registry(); }

}  // namespace cfdtm

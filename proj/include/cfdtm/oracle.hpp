#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfdtm/series.hpp"
#include "cfdtm/solver.hpp"

namespace cfdtm {

using RealFn = std::function<double(double)>;

struct OracleConfig {
  // First-derivative step, scaled by max(1, |t|). Nested derivatives of total
  // order n use h^(1/n) instead.
  double h = 1e-6;
  // Smallest t - t0 at which the operator is applied.
  double t_min_offset = 1e-3;
};

// Classical n-th derivative of f at t by nested 4th-order central stencils.
// step is the spacing of the innermost stencil.
double classical_derivative(const RealFn& f, int n, double t, double step);

// Conformable derivative of order beta about t0:
//   T_beta f(t) = (t - t0)^{1 - (beta - m)} * f^{(m+1)}(t),   m < beta <= m + 1.
// Throws DomainError for t < t0 + cfg.t_min_offset and ArgumentError for
// beta <= 0 or an invalid cfg.
double conformable_deriv(const RealFn& f, double beta, double t, double t0,
                         const OracleConfig& cfg = {});

// Pointwise value of rhs at t, with Unknown -> y(t) and Deriv(beta) ->
// deriv(beta, t).
double evaluate_rhs_at(const Expr& rhs, double t, double alpha, double t0, const RealFn& y,
                       const std::function<double(double, double)>& deriv);

struct VerifyReport {
  std::vector<double> points;
  std::vector<double> series_values;
  // Set by compare().
  std::optional<std::vector<double>> exact_values;
  // Set by residual().
  std::optional<std::vector<double>> residuals;
  double max_abs_error = 0.0;
  double max_abs_residual = 0.0;
};

// T_{beta_max}(y) - rhs(y) at each grid point, with every derivative taken
// numerically from the series.
VerifyReport residual(const OdeProblem& p, const FracSeries& y, std::span<const double> grid,
                      const OracleConfig& cfg = {});

// Solves p and compares the series against exact on the grid.
VerifyReport compare(const OdeProblem& p, const RealFn& exact, std::span<const double> grid);

/// One of the five worked examples with a closed-form solution.
struct ExampleEntry {
  std::string id;
  std::string title;
  // Equation in the CLI's DSL for a given alpha.
  std::function<std::string(double alpha)> equation;
  std::string note;
  double default_alpha = 0.5;
  // Upper end of the comparison interval; example2's closed form has a pole
  // at t^alpha = alpha and is capped at 0.9 alpha^(1/alpha).
  std::function<double(double alpha)> valid_until;
  std::function<double(double alpha, double t)> exact;
  std::function<OdeProblem(double alpha, std::size_t n_terms)> problem;

  // Parameters used by the examples runner.
  std::size_t check_terms = 30;
  std::function<std::pair<double, double>(double alpha)> check_interval;
  double error_tol = 1e-8;
  double residual_tol = 1e-4;

  RealFn exact_fn(double alpha) const {
    return [f = exact, alpha](double t) { return f(alpha, t); };
  }
};

// Example ids: example1 .. example5. Throws std::out_of_range for anything else.
const ExampleEntry& exact_registry(std::string_view id);
std::span<const ExampleEntry> all_examples();

}  // namespace cfdtm

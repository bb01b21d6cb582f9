#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cfdtm/errors.hpp"

namespace cfdtm {

// Tolerance for "x is an integer" checks on user-entered orders and powers.
inline constexpr double kIntegralityTol = 1e-9;

// Returns round(x) when |x - round(x)| <= kIntegralityTol.
std::optional<long> near_integer(double x);

/// Truncated fractional power series
///
///   f(t) = sum_{k=0}^{N} coeffs[k] * (t - t0)^{alpha k}
///
/// The same coefficient list is the conformable fractional differential
/// transform F_alpha(k) of f about t0, so one type serves as both the
/// function and its transform.
class FracSeries {
 public:
  // Throws ArgumentError unless 0 < alpha <= 1, t0 >= 0 and coeffs is non-empty.
  FracSeries(double alpha, double t0, std::vector<double> coeffs);

  double alpha() const { return alpha_; }
  double t0() const { return t0_; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  double operator[](std::size_t k) const { return coeffs_[k]; }

  // Same alpha and t0, bit for bit.
  bool compatible_with(const FracSeries& other) const;

  // Copy of the first n coefficients (n clamped to size(), n >= 1).
  FracSeries truncated(std::size_t n) const;

  friend bool operator==(const FracSeries&, const FracSeries&) = default;

 private:
  double alpha_;
  double t0_;
  std::vector<double> coeffs_;
};

struct EvalGrid {
  std::vector<double> points;
  std::vector<double> values;
};

// count equally spaced points on [start, stop]; count == 1 gives {start}.
// Throws DomainError when start < t0 and ArgumentError on an empty or
// non-increasing range.
std::vector<double> linspace_grid(double start, double stop, std::size_t count, double t0);

// Throws DomainError/ArgumentError if points are not strictly increasing or
// fall below t0.
void check_grid(std::span<const double> points, double t0);

FracSeries add(const FracSeries& u, const FracSeries& v);
FracSeries subtract(const FracSeries& u, const FracSeries& v);
FracSeries scale(double c, const FracSeries& u);

// Result length is min(u.size(), v.size()): further coefficients would be
// incomplete convolutions.
FracSeries cauchy_product(const FracSeries& u, const FracSeries& v);

// Left fold of cauchy_product. Throws ArgumentError on an empty list.
FracSeries nary_product(std::span<const FracSeries> us);

// Transform of (t - t0)^p: delta(k - p/alpha). Needs p >= 0, p/alpha integral
// and len > p/alpha.
FracSeries monomial_transform(double p, double alpha, double t0, std::size_t len);

// Transform of exp(lambda (t - t0)^alpha / alpha): lambda^k / (alpha^k k!).
FracSeries exp_transform(double lambda, double alpha, double t0, std::size_t len);

// Transforms of sin/cos(omega (t - t0)^alpha / alpha + c).
FracSeries sin_transform(double omega, double c, double alpha, double t0, std::size_t len);
FracSeries cos_transform(double omega, double c, double alpha, double t0, std::size_t len);

// Inverse transform at t (Horner in w = (t - t0)^alpha). Throws DomainError
// for t < t0.
double evaluate(const FracSeries& u, double t);

EvalGrid evaluate(const FracSeries& u, std::span<const double> points);

struct SampledTransform {
  FracSeries series;
  // Coefficients with index < reliable_terms are expected to carry at least
  // four correct digits.
  std::size_t reliable_terms;
  bool accuracy_warning;
};

// Numerical estimate of F_alpha(k), k < len, from samples of f on
// [t0, t0 + 0.1]. Test-side cross-check only; the solver never calls it.
SampledTransform transform_of_samples(const std::function<double(double)>& f, double alpha,
                                      double t0, std::size_t len);

}  // namespace cfdtm

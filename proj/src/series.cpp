#include "cfdtm/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cfdtm {

std::optional<long> near_integer(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  const double r = std::round(x);
  if (std::abs(x - r) > kIntegralityTol) return std::nullopt;
  return static_cast<long>(r);
}

FracSeries::FracSeries(double alpha, double t0, std::vector<double> coeffs)
    : alpha_(alpha), t0_(t0), coeffs_(std::move(coeffs)) {
  if (!(alpha_ > 0.0 && alpha_ <= 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1], got " + std::to_string(alpha_));
  }
  if (!(t0_ >= 0.0) || !std::isfinite(t0_)) {
    throw ArgumentError("t0 must be finite and >= 0");
  }
  if (coeffs_.empty()) throw ArgumentError("a series needs at least one coefficient");
}

bool FracSeries::compatible_with(const FracSeries& other) const {
  return alpha_ == other.alpha_ && t0_ == other.t0_;
}

FracSeries FracSeries::truncated(std::size_t n) const {
  n = std::clamp<std::size_t>(n, 1, coeffs_.size());
  return {alpha_, t0_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + n)};
}

namespace {

void require_compatible(const FracSeries& u, const FracSeries& v) {
  if (!u.compatible_with(v)) {
    throw CompatibilityError("series differ in alpha or t0");
  }
}

// rate^k / (alpha^k k!)
std::vector<double> exp_like_coeffs(double rate, double alpha, std::size_t len) {
  std::vector<double> out(len);
  double c = 1.0;
  for (std::size_t k = 0; k < len; ++k) {
    out[k] = c;
    c *= rate / (alpha * static_cast<double>(k + 1));
  }
  return out;
}

std::vector<double> trig_coeffs(double omega, double c, double alpha, std::size_t len,
                                bool cosine) {
  auto out = exp_like_coeffs(omega, alpha, len);
  for (std::size_t k = 0; k < len; ++k) {
    // sin/cos(k pi/2 + c) by k mod 4, so c = 0 gives exact zeros.
    double s = 0.0;
    switch (k % 4) {
      case 0: s = cosine ? std::cos(c) : std::sin(c); break;
      case 1: s = cosine ? -std::sin(c) : std::cos(c); break;
      case 2: s = cosine ? -std::cos(c) : -std::sin(c); break;
      default: s = cosine ? std::sin(c) : -std::cos(c); break;
    }
    out[k] *= s;
  }
  return out;
}

}  // namespace

std::vector<double> linspace_grid(double start, double stop, std::size_t count, double t0) {
  if (count == 0) throw ArgumentError("grid needs at least one point");
  if (start < t0) throw DomainError("grid starts below t0");
  if (count == 1) return {start};
  if (!(stop > start)) throw ArgumentError("grid stop must exceed start");
  std::vector<double> pts(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = start + step * static_cast<double>(i);
  pts.back() = stop;
  return pts;
}

void check_grid(std::span<const double> points, double t0) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < t0) throw DomainError("grid point below t0");
    if (i > 0 && !(points[i] > points[i - 1])) {
      throw ArgumentError("grid points must be strictly increasing");
    }
  }
}

FracSeries add(const FracSeries& u, const FracSeries& v) {
  require_compatible(u, v);
  std::vector<double> out(std::max(u.size(), v.size()), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) out[k] += u[k];
  for (std::size_t k = 0; k < v.size(); ++k) out[k] += v[k];
  return {u.alpha(), u.t0(), std::move(out)};
}

FracSeries subtract(const FracSeries& u, const FracSeries& v) {
  require_compatible(u, v);
  std::vector<double> out(std::max(u.size(), v.size()), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) out[k] += u[k];
  for (std::size_t k = 0; k < v.size(); ++k) out[k] -= v[k];
  return {u.alpha(), u.t0(), std::move(out)};
}

FracSeries scale(double c, const FracSeries& u) {
  std::vector<double> out(u.coeffs().begin(), u.coeffs().end());
  for (double& x : out) x *= c;
  return {u.alpha(), u.t0(), std::move(out)};
}

FracSeries cauchy_product(const FracSeries& u, const FracSeries& v) {
  require_compatible(u, v);
  const std::size_t n = std::min(u.size(), v.size());
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t l = 0; l <= k; ++l) acc += u[l] * v[k - l];
    out[k] = acc;
  }
  return {u.alpha(), u.t0(), std::move(out)};
}

FracSeries nary_product(std::span<const FracSeries> us) {
  if (us.empty()) throw ArgumentError("nary_product of an empty list");
  FracSeries acc = us.front();
  for (const auto& u : us.subspan(1)) acc = cauchy_product(acc, u);
  return acc;
}

FracSeries monomial_transform(double p, double alpha, double t0, std::size_t len) {
  if (!(p >= 0.0)) throw RepresentabilityError("monomial power must be >= 0");
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  const auto idx = near_integer(p / alpha);
  if (!idx) {
    throw RepresentabilityError("(t - t0)^" + std::to_string(p) +
                                " is not on the alpha-grid: p/alpha is not an integer");
  }
  if (static_cast<std::size_t>(*idx) >= len) {
    throw LengthError("series length must exceed p/alpha");
  }
  std::vector<double> out(len, 0.0);
  out[static_cast<std::size_t>(*idx)] = 1.0;
  return {alpha, t0, std::move(out)};
}

FracSeries exp_transform(double lambda, double alpha, double t0, std::size_t len) {
  return {alpha, t0, exp_like_coeffs(lambda, alpha, len)};
}

FracSeries sin_transform(double omega, double c, double alpha, double t0, std::size_t len) {
  return {alpha, t0, trig_coeffs(omega, c, alpha, len, false)};
}

FracSeries cos_transform(double omega, double c, double alpha, double t0, std::size_t len) {
  return {alpha, t0, trig_coeffs(omega, c, alpha, len, true)};
}

double evaluate(const FracSeries& u, double t) {
  if (t < u.t0()) throw DomainError("series evaluated below its base point");
  const double w = std::pow(t - u.t0(), u.alpha());
  double acc = 0.0;
  for (std::size_t k = u.size(); k-- > 0;) acc = acc * w + u[k];
  return acc;
}

EvalGrid evaluate(const FracSeries& u, std::span<const double> points) {
  check_grid(points, u.t0());
  EvalGrid g{{points.begin(), points.end()}, {}};
  g.values.reserve(points.size());
  for (double t : points) g.values.push_back(evaluate(u, t));
  return g;
}

// In w = (t - t0)^alpha the conformable derivative is alpha d/dw, so F_alpha(k)
// is the k-th Taylor coefficient of g(w) = f(t0 + w^{1/alpha}) at w = 0. g is
// interpolated on Chebyshev-Lobatto nodes over [0, 0.1^alpha] and the
// interpolant's monomial coefficients are read off.
SampledTransform transform_of_samples(const std::function<double(double)>& f, double alpha,
                                      double t0, std::size_t len) {
  constexpr std::size_t kNodes = 12;
  constexpr std::size_t kReliable = 6;
  if (len == 0) throw ArgumentError("len must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
  if (len > kNodes + 1) throw LengthError("transform_of_samples supports at most 13 terms");

  const double width = std::pow(0.1, alpha);
  std::vector<double> u(kNodes + 1);
  std::vector<double> dd(kNodes + 1);
  for (std::size_t j = 0; j <= kNodes; ++j) {
    u[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / kNodes));
    const double w = width * u[j];
    dd[j] = f(t0 + std::pow(w, 1.0 / alpha));
  }
  // Newton divided differences in the scaled variable u = w / width.
  for (std::size_t k = 1; k <= kNodes; ++k) {
    for (std::size_t j = kNodes; j >= k; --j) {
      dd[j] = (dd[j] - dd[j - 1]) / (u[j] - u[j - k]);
    }
  }
  // Newton form -> monomial coefficients.
  std::vector<double> poly(kNodes + 1, 0.0);
  poly[0] = dd[kNodes];
  for (std::size_t k = kNodes; k-- > 0;) {
    for (std::size_t i = kNodes; i >= 1; --i) poly[i] = poly[i - 1] - u[k] * poly[i];
    poly[0] = dd[k] - u[k] * poly[0];
  }

  std::vector<double> out(len);
  double inv_scale = 1.0;
  for (std::size_t k = 0; k < len; ++k) {
    out[k] = poly[k] * inv_scale;
    inv_scale /= width;
  }
  return {FracSeries(alpha, t0, std::move(out)), std::min(len, kReliable), len > kReliable};
}

}  // namespace cfdtm

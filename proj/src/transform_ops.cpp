#include "cfdtm/transform_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cfdtm {

int integer_part(double beta) {
  // Orders built as s * alpha land a few ulps off an integer.
  if (const auto n = near_integer(beta)) return static_cast<int>(*n) - 1;
  return static_cast<int>(std::ceil(beta)) - 1;
}

DerivOrder::DerivOrder(double beta, double alpha) : beta_(beta), alpha_(alpha) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ArgumentError("derivative order must be positive and finite");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
  m_ = integer_part(beta);
  const auto s = near_integer(beta / alpha);
  if (!s || *s < 1) {
    throw RepresentabilityError("derivative order " + std::to_string(beta) +
                                " is not a positive integer multiple of alpha = " +
                                std::to_string(alpha));
  }
  shift_ = static_cast<std::size_t>(*s);
}

double gamma_ratio(std::size_t k, const DerivOrder& order) {
  const double x = static_cast<double>(k) * order.alpha() + order.beta();
  double r = 1.0;
  for (int j = 0; j <= order.m(); ++j) r *= x - j;
  return r;
}

FracSeries deriv_transform(const FracSeries& u, const DerivOrder& order) {
  if (order.alpha() != u.alpha()) {
    throw CompatibilityError("derivative order was validated against a different alpha");
  }
  const std::size_t s = order.shift();
  if (u.size() <= s) {
    throw LengthError("series of length " + std::to_string(u.size()) +
                      " is too short for a shift of " + std::to_string(s));
  }
  std::vector<double> out(u.size() - s);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = gamma_ratio(k, order) * u[k + s];
  return {u.alpha(), u.t0(), std::move(out)};
}

FracSeries deriv_product_transform(std::span<const DerivFactor> factors) {
  if (factors.empty()) throw ArgumentError("deriv_product_transform of an empty list");
  std::vector<FracSeries> parts;
  parts.reserve(factors.size());
  for (const auto& f : factors) parts.push_back(deriv_transform(f.series, f.order));
  return nary_product(parts);
}

std::vector<double> seed_initial_conditions(double alpha, double beta_max,
                                            std::span<const double> classical_derivs) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
  const auto s_max = near_integer(beta_max / alpha);
  if (!s_max || *s_max < 1) {
    throw RepresentabilityError("principal order is not a positive integer multiple of alpha");
  }
  std::vector<double> prefix(static_cast<std::size_t>(*s_max), 0.0);
  double factorial = 1.0;
  long last_j = 0;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    const auto j = near_integer(alpha * static_cast<double>(k));
    if (!j) continue;
    if (*j >= static_cast<long>(classical_derivs.size())) {
      throw ArgumentError("initial data needs y^(" + std::to_string(*j) + ")(t0)");
    }
    for (long i = last_j + 1; i <= *j; ++i) factorial *= static_cast<double>(i);
    last_j = std::max(last_j, *j);
    prefix[k] = classical_derivs[static_cast<std::size_t>(*j)] / factorial;
  }
  return prefix;
}

}  // namespace cfdtm

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfdtm/series.hpp"

namespace cfdtm {

/// A conformable derivative order beta checked against a series order alpha.
///
/// m is the integer part with m < beta <= m + 1, and shift = beta / alpha is
/// the index displacement the derivative induces on a transform sequence.
class DerivOrder {
 public:
  // Throws ArgumentError for beta <= 0 or alpha outside (0, 1], and
  // RepresentabilityError when beta / alpha is not a positive integer.
  DerivOrder(double beta, double alpha);

  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  int m() const { return m_; }
  std::size_t shift() const { return shift_; }

  friend bool operator==(const DerivOrder&, const DerivOrder&) = default;

 private:
  double beta_;
  double alpha_;
  int m_;
  std::size_t shift_;
};

// Integer part m of beta with m < beta <= m + 1.
int integer_part(double beta);

// Gamma(k alpha + beta + 1) / Gamma(k alpha + beta - m) as the falling
// factorial prod_{j=0}^{m} (k alpha + beta - j).
double gamma_ratio(std::size_t k, const DerivOrder& order);

// Transform of T_beta u: F(k) = gamma_ratio(k) U(k + beta/alpha). The result
// has u.size() - shift coefficients. Throws LengthError when u is too short and
// CompatibilityError when order.alpha() differs from u.alpha().
FracSeries deriv_transform(const FracSeries& u, const DerivOrder& order);

struct DerivFactor {
  FracSeries series;
  DerivOrder order;
};

// Transform of prod_i T_{beta_i} u_i.
FracSeries deriv_product_transform(std::span<const DerivFactor> factors);

// Leading coefficients Y(0..s_max-1) of a solution of an order-beta_max
// equation from classical initial values y^(j)(t0), j = 0, 1, ...
// Y(k) = y^(alpha k)(t0) / (alpha k)! when alpha k is an integer, else 0.
//
// Throws RepresentabilityError when beta_max / alpha is not a positive
// integer and ArgumentError when a needed y^(j) is missing.
std::vector<double> seed_initial_conditions(double alpha, double beta_max,
                                            std::span<const double> classical_derivs);

}  // namespace cfdtm

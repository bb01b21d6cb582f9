#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfdtm/expr.hpp"
#include "cfdtm/series.hpp"
#include "cfdtm/transform_ops.hpp"

namespace cfdtm {

/// Explicit conformable initial value problem
///
///   T_{beta_max} y = rhs,   y^(j)(t0) = init[j],  j = 0 .. ceil(beta_max) - 1
///
/// solved for a series of n_terms + 1 coefficients.
struct OdeProblem {
  double alpha = 1.0;
  double t0 = 0.0;
  double beta_max = 1.0;
  Expr rhs = Expr::constant(0.0);
  std::vector<double> init;
  std::size_t n_terms = 10;
};

enum class DiagCode {
  AlphaRange,
  BaseNegative,
  PrincipalNotMultiple,
  DerivNotMultiple,
  Causality,
  MonomialNotRepresentable,
  InitLength,
  TooFewTerms,
  BadArity,
  BadExponent,
  NonFinite,
};

// Stable machine-readable code, e.g. "causality".
std::string_view to_string(DiagCode code);

struct Diagnostic {
  DiagCode code;
  // Child-index path into the rhs ("rhs", "rhs/1/0", ...) or the problem field.
  std::string path;
  std::string message;
};

// Every violated invariant; empty means the problem can be solved.
std::vector<Diagnostic> validate(const OdeProblem& p);

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

// Transform coefficient at index k of rhs, given solution coefficients y
// (y.size() must cover every index the expression touches at step k).
// Throws std::out_of_range when y is too short.
double rhs_coefficient(const Expr& rhs, std::size_t k, const FracSeries& y);

// Seeds Y(0..s_max-1) from the initial data and unrolls
//   Y(k + s_max) = rhs_k / gamma_ratio(k, beta_max),  k = 0 .. n_terms - s_max.
// Throws ValidationError if validate(p) reports anything.
FracSeries solve(const OdeProblem& p);

}  // namespace cfdtm

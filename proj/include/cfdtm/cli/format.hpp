#pragma once

#include <optional>
#include <string>

namespace cfdtm::cli {

// 17 significant digits, '.' decimal point regardless of locale.
std::string csv_number(double x);

// Shortest text that parses back to x.
std::string short_number(double x);

struct Rational {
  long long num;
  long long den;
};

// Continued-fraction snap: p/q with q <= max_den and
// |x - p/q| <= tol * max(1, |x|). Display only.
std::optional<Rational> recognize_rational(double x, double tol = 1e-12,
                                           long long max_den = 100'000);

// "p/q", "p", or the decimal when no rational is recognized.
std::string display_coefficient(double x);

}  // namespace cfdtm::cli

#include "cfdtm/cli/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace cfdtm::cli {

std::string csv_number(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return {buf.data(), end};
}

std::string short_number(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), end};
}

std::optional<Rational> recognize_rational(double x, double tol, long long max_den) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  const double bound = tol * std::max(1.0, std::abs(x));
  // Convergents h/k of the continued fraction of x.
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double rem = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= bound) {
      return Rational{h, k};
    }
    if (rem < 1e-15) break;
    const double inv = 1.0 / rem;
    const auto a = static_cast<long long>(std::floor(inv));
    rem = inv - std::floor(inv);
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

std::string display_coefficient(double x) {
  if (auto r = recognize_rational(x)) {
    if (r->den == 1) return std::to_string(r->num);
    return std::to_string(r->num) + "/" + std::to_string(r->den);
  }
  return short_number(x);
}

}  // namespace cfdtm::cli

#include <cmath>
#include <random>
#include <vector>

#include "cfdtm/transform_ops.hpp"
#include "doctest.h"

using namespace cfdtm;

namespace {

FracSeries random_series(std::mt19937_64& rng, std::size_t len, double alpha) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> c(len);
  for (double& x : c) x = d(rng);
  return {alpha, 0.0, std::move(c)};
}

// Gamma(k a + b + 1) / Gamma(k a + b - m) through log-gamma; both arguments
// are positive for k >= 1 or b > m.
double gamma_ratio_lgamma(std::size_t k, double a, double b, int m) {
  const double x = static_cast<double>(k) * a + b;
  return std::exp(std::lgamma(x + 1.0) - std::lgamma(x - m));
}

// Direct evaluation of F(k) = sum over k_1 + ... + k_n = k of
// prod_i gamma_i(k_i) U_i(k_i + s_i), with no shared code path.
double nested_sum(const std::vector<FracSeries>& us, const std::vector<DerivOrder>& orders,
                  std::size_t k) {
  const std::size_t n = us.size();
  std::vector<std::size_t> idx(n, 0);
  double total = 0.0;
  // Enumerate all n-tuples with entries in [0, k] and keep those summing to k.
  while (true) {
    std::size_t sum = 0;
    for (auto i : idx) sum += i;
    if (sum == k) {
      double term = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(idx[i]) * orders[i].alpha() + orders[i].beta();
        double g = 1.0;
        for (int j = 0; j <= orders[i].m(); ++j) g *= x - j;
        term *= g * us[i][idx[i] + orders[i].shift()];
      }
      total += term;
    }
    std::size_t pos = 0;
    while (pos < n && idx[pos] == k) idx[pos++] = 0;
    if (pos == n) break;
    ++idx[pos];
  }
  return total;
}

}  // namespace

TEST_CASE("DerivOrder") {
  const DerivOrder d(1.5, 0.5);
  CHECK(d.m() == 1);
  CHECK(d.shift() == 3);
  CHECK(DerivOrder(1.0, 0.5).m() == 0);
  CHECK(DerivOrder(2.0, 1.0).m() == 1);
  CHECK(DerivOrder(0.3, 0.1).shift() == 3);
  CHECK_THROWS_AS(DerivOrder(0.0, 0.5), ArgumentError);
  CHECK_THROWS_AS(DerivOrder(-0.5, 0.5), ArgumentError);
  CHECK_THROWS_AS(DerivOrder(1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(DerivOrder(0.7, 0.5), RepresentabilityError);
}

TEST_CASE("integer_part") {
  CHECK(integer_part(0.3) == 0);
  CHECK(integer_part(1.0) == 0);
  CHECK(integer_part(1.5) == 1);
  CHECK(integer_part(2.0) == 1);
  CHECK(integer_part(2.0000000001) == 1);
  CHECK(integer_part(10 * 0.1) == 0);
  CHECK(integer_part(2.5) == 2);
}

TEST_CASE("gamma_ratio examples") {
  for (double a : {0.3, 0.5, 1.0}) {
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(gamma_ratio(k, DerivOrder(a, a)) ==
            doctest::Approx(a * (static_cast<double>(k) + 1)).epsilon(1e-15));
    }
  }
  CHECK(gamma_ratio(0, DerivOrder(2.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gamma_ratio(0, DerivOrder(1.5, 0.5)) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("gamma_ratio agrees with log-gamma") {
  std::mt19937_64 rng(7);
  const double alphas[] = {0.1, 0.2, 0.25, 0.5, 0.75, 1.0};
  std::uniform_int_distribution<int> pick(0, 5), mult(1, 6), kk(1, 30);
  for (int i = 0; i < 50; ++i) {
    const double a = alphas[pick(rng)];
    const double b = a * mult(rng);
    const DerivOrder o(b, a);
    const auto k = static_cast<std::size_t>(kk(rng));
    const double want = gamma_ratio_lgamma(k, a, b, o.m());
    CHECK(std::abs(gamma_ratio(k, o) - want) <= 1e-10 * std::abs(want));
  }
}

TEST_CASE("deriv_transform") {
  SUBCASE("example5 derivative") {
    const FracSeries y(0.5, 0.0, {0, 0, 1, 0, 0.5});
    const auto f = deriv_transform(y, DerivOrder(0.5, 0.5));
    REQUIRE(f.size() == 4);
    CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[0] == 0.0);
  }
  SUBCASE("derivative of an exponential") {
    for (double a : {0.4, 0.5, 1.0}) {
      const double lam = 1.7;
      const auto e = exp_transform(lam, a, 0.0, 20);
      const auto d = deriv_transform(e, DerivOrder(a, a));
      for (std::size_t k = 0; k < d.size(); ++k) {
        CHECK(std::abs(d[k] - lam * e[k]) <= 1e-13 * std::abs(lam * e[k]));
      }
    }
  }
  SUBCASE("errors") {
    const FracSeries u(0.5, 0.0, {1, 2});
    CHECK_THROWS_AS(deriv_transform(u, DerivOrder(1.0, 0.5)), LengthError);
    CHECK_THROWS_AS(deriv_transform(u, DerivOrder(0.25, 0.25)), CompatibilityError);
  }
}

// In w = (t - t0)^alpha the first-level operator is alpha d/dw, so s
// applications give alpha^s (k+s)!/k! U(k+s). A single order-s*alpha
// derivative carries the falling factorial of k alpha + s alpha instead; the
// two agree only at alpha = 1.
TEST_CASE("composition of first-level derivatives") {
  std::mt19937_64 rng(99);
  for (double a : {0.25, 0.5, 1.0}) {
    for (std::size_t s = 1; s <= 4; ++s) {
      const auto u = random_series(rng, 15, a);
      FracSeries iter = u;
      for (std::size_t i = 0; i < s; ++i) iter = deriv_transform(iter, DerivOrder(a, a));
      REQUIRE(iter.size() == 15 - s);
      for (std::size_t k = 0; k < iter.size(); ++k) {
        double want = u[k + s];
        for (std::size_t j = 1; j <= s; ++j) want *= a * static_cast<double>(k + j);
        CHECK(std::abs(iter[k] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
      if (a == 1.0) {
        const auto once = deriv_transform(u, DerivOrder(static_cast<double>(s), a));
        for (std::size_t k = 0; k < once.size(); ++k) {
          CHECK(std::abs(iter[k] - once[k]) <= 1e-12 * std::max(1.0, std::abs(once[k])));
        }
      }
    }
  }
}

TEST_CASE("higher order is a classical derivative followed by a fractional one") {
  // T_{n + a} f = T_a f^{(n)}. On transforms at alpha = a: f^{(n)} is not a
  // w-series in general, so check on y = w^j with a = 1/2, n = 1 directly.
  const double a = 0.5;
  for (std::size_t j = 3; j < 12; ++j) {
    std::vector<double> c(j + 1, 0.0);
    c[j] = 1.0;
    const FracSeries y(a, 0.0, c);
    const auto d = deriv_transform(y, DerivOrder(1.5, a));
    // f = t^{j/2}, f' = (j/2) t^{j/2 - 1}, T_{1/2} f' = t^{1/2} (j/2)(j/2 - 1) t^{j/2 - 2}
    const double p = a * static_cast<double>(j);
    REQUIRE(d.size() == j - 2);
    CHECK(d[j - 3] == doctest::Approx(p * (p - 1)).epsilon(1e-14));
  }
}

TEST_CASE("deriv_product_transform against a nested-sum oracle") {
  std::mt19937_64 rng(31337);
  const double a = 0.5;
  const double betas[] = {0.5, 1.0, 1.5};
  std::uniform_int_distribution<int> pick(0, 2);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<FracSeries> us;
      std::vector<DerivOrder> orders;
      std::vector<DerivFactor> factors;
      for (std::size_t i = 0; i < n; ++i) {
        us.push_back(random_series(rng, 8, a));
        orders.emplace_back(betas[pick(rng)], a);
        factors.push_back({us.back(), orders.back()});
      }
      const auto got = deriv_product_transform(factors);
      std::size_t max_shift = 0;
      for (const auto& o : orders) max_shift = std::max(max_shift, o.shift());
      CHECK(got.size() == 8 - max_shift);
      for (std::size_t k = 0; k < got.size(); ++k) {
        const double want = nested_sum(us, orders, k);
        CHECK(std::abs(got[k] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
    }
  }
  CHECK_THROWS_AS(deriv_product_transform(std::vector<DerivFactor>{}), ArgumentError);
}

TEST_CASE("seed_initial_conditions") {
  CHECK(seed_initial_conditions(0.5, 2.0, std::vector{1.0, 1.0}) ==
        std::vector<double>{1, 0, 1, 0});
  CHECK(seed_initial_conditions(0.5, 1.5, std::vector{0.0, 1.0}) == std::vector<double>{0, 0, 1});
  CHECK(seed_initial_conditions(0.25, 0.25, std::vector{3.5}) == std::vector<double>{3.5});
  CHECK(seed_initial_conditions(1.0, 3.0, std::vector{1.0, 2.0, 6.0}) ==
        std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(seed_initial_conditions(0.5, 0.7, std::vector{1.0}), RepresentabilityError);
  CHECK_THROWS_AS(seed_initial_conditions(0.5, 2.0, std::vector{1.0}), ArgumentError);
}

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Expected values come from closed forms written out here, never from the
// library's own transforms.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfdtm/cli/commands.hpp"
#include "cfdtm/cli/dsl.hpp"
#include "cfdtm/oracle.hpp"
#include "cfdtm/series.hpp"
#include "cfdtm/solver.hpp"
#include "cfdtm/transform_ops.hpp"

using namespace cfdtm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records the first failure only; detail then explains it.
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double rel(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

double max_err_on(const FracSeries& y, const std::function<double(double)>& exact, double lo,
                  double hi, std::size_t count) {
  double worst = 0.0;
  for (double t : linspace_grid(lo, hi, count, y.t0())) {
    worst = std::max(worst, std::abs(evaluate(y, t) - exact(t)));
  }
  return worst;
}

Outcome criterion1() {
  Outcome o;
  const auto& ex = exact_registry("example1");
  double worst_rel = 0.0, worst_abs = 0.0;
  for (double a : {0.5, 0.75, 1.0}) {
    const auto y = solve(ex.problem(a, 12));
    for (int n = 0; n <= 12; ++n) {
      const double want = std::pow(-1.0, n) / (factorial(n) * std::pow(a, n));
      worst_rel = std::max(worst_rel, rel(y[n], want));
    }
    const auto y30 = solve(ex.problem(a, 30));
    worst_abs = std::max(worst_abs, max_err_on(y30, [a](double t) {
      return std::exp(-std::pow(t, a) / a);
    }, 0.0, 0.5, 50));
  }
  o.require(worst_rel <= 1e-12, "coefficient rel err " + fmt(worst_rel));
  o.require(worst_abs <= 1e-8, "evaluation err " + fmt(worst_abs));
  o.detail = o.pass ? "coef rel " + fmt(worst_rel) + ", eval " + fmt(worst_abs) : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto& ex = exact_registry("example2");
  double worst_rel = 0.0, worst_abs = 0.0;
  for (double a : {0.5, 0.75, 1.0}) {
    const auto y = solve(ex.problem(a, 10));
    o.require(y[0] == 0.0, "Y(0) != 0");
    for (int k = 1; k <= 10; ++k) worst_rel = std::max(worst_rel, rel(y[k], std::pow(a, -k)));
    const auto yn = solve(ex.problem(a, 60));
    const double hi = 0.5 * std::pow(a, 1.0 / a);
    worst_abs = std::max(worst_abs, max_err_on(yn, [a](double t) {
      const double w = std::pow(t, a);
      return w / (a - w);
    }, 0.0, hi, 50));
  }
  o.require(worst_rel <= 1e-12, "coefficient rel err " + fmt(worst_rel));
  o.require(worst_abs <= 1e-6, "evaluation err " + fmt(worst_abs));
  o.detail = o.pass ? "coef rel " + fmt(worst_rel) + ", eval " + fmt(worst_abs) + " (N = 60)"
                    : o.detail;
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto& ex = exact_registry("example3");
  double worst_rel = 0.0, worst_zero = 0.0, worst_abs = 0.0;
  const double num[] = {1, -1, 2, -17, 62};
  const double den[] = {1, 3, 15, 315, 2835};
  for (double a : {0.5, 1.0}) {
    const auto y = solve(ex.problem(a, 9));
    for (int k = 0; k <= 9; ++k) {
      if (k % 2 == 0) {
        worst_zero = std::max(worst_zero, std::abs(y[k]));
      } else {
        const double want = num[k / 2] / (den[k / 2] * std::pow(a, k));
        worst_rel = std::max(worst_rel, rel(y[k], want));
      }
    }
    const auto yn = solve(ex.problem(a, 100));
    worst_abs = std::max(worst_abs, max_err_on(yn, [a](double t) {
      const double e = std::exp(2.0 * std::pow(t, a) / a);
      return (e - 1.0) / (e + 1.0);
    }, 0.0, 0.4, 50));
  }
  o.require(worst_rel <= 1e-12, "odd coefficient rel err " + fmt(worst_rel));
  o.require(worst_zero == 0.0, "even coefficient " + fmt(worst_zero));
  o.require(worst_abs <= 1e-6, "evaluation err " + fmt(worst_abs));
  o.detail = o.pass ? "coef rel " + fmt(worst_rel) + ", eval " + fmt(worst_abs) + " (N = 100)"
                    : o.detail;
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto y = solve(exact_registry("example4").problem(0.5, 20));
  const double prefix[] = {1, 0, 1, 0};
  for (int k = 0; k < 4; ++k) o.require(y[k] == prefix[k], "prefix Y(" + std::to_string(k) + ")");
  double tail = 0.0;
  for (std::size_t k = 4; k <= 20; ++k) tail = std::max(tail, std::abs(y[k]));
  o.require(tail <= 1e-12, "tail " + fmt(tail));
  const double err = max_err_on(y, [](double t) { return 1.0 + t; }, 0.0, 2.0, 50);
  o.require(err <= 1e-12, "evaluation err " + fmt(err));
  o.detail = o.pass ? "tail " + fmt(tail) + ", eval " + fmt(err) : o.detail;
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto y = solve(exact_registry("example5").problem(0.5, 40));
  double worst = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double want = (k % 2 == 0 && k > 0) ? 1.0 / factorial(k / 2) : 0.0;
    worst = std::max(worst, rel(y[k], want));
  }
  const double err = max_err_on(y, [](double t) { return std::expm1(t); }, 0.0, 1.0, 50);
  o.require(worst <= 1e-12, "coefficient rel err " + fmt(worst));
  o.require(err <= 1e-8, "evaluation err " + fmt(err));
  o.detail = o.pass ? "coef rel " + fmt(worst) + ", eval " + fmt(err) : o.detail;
  return o;
}

Outcome criterion6() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.1, 0.25, 0.5, 1.0}) {
    const DerivOrder d(a, a);
    for (std::size_t k = 0; k <= 100; ++k) {
      worst = std::max(worst, rel(gamma_ratio(k, d), a * static_cast<double>(k + 1)));
    }
  }
  o.require(worst <= 1e-14, "degenerate case rel err " + fmt(worst));

  std::mt19937_64 rng(2718);
  const double alphas[] = {0.1, 0.2, 0.25, 0.5, 0.75, 1.0};
  std::uniform_int_distribution<int> pick(0, 5), mult(1, 6), kk(0, 40);
  double worst_lg = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double a = alphas[pick(rng)];
    const DerivOrder d(a * mult(rng), a);
    const auto k = static_cast<std::size_t>(kk(rng));
    const double x = static_cast<double>(k) * a + d.beta();
    const double want = std::exp(std::lgamma(x + 1.0) - std::lgamma(x - d.m()));
    worst_lg = std::max(worst_lg, rel(gamma_ratio(k, d), want));
  }
  o.require(worst_lg <= 1e-10, "log-gamma rel err " + fmt(worst_lg));
  o.detail = o.pass ? "degenerate " + fmt(worst) + ", log-gamma " + fmt(worst_lg) : o.detail;
  return o;
}

Outcome criterion7() {
  Outcome o;
  double worst = 0.0, worst_unit = 0.0;
  for (double a : {0.5, 0.8}) {
    const RealFn f = [](double t) { return t * t; };
    const RealFn g = [a](double t) { return std::sin(std::pow(t, a) / a); };
    const RealFn q = [a](double t) { return 2.0 + std::cos(std::pow(t, a) / a); };
    for (double t : {0.3, 0.7, 1.1}) {
      const double tf = conformable_deriv(f, a, t, 0.0);
      const double tg = conformable_deriv(g, a, t, 0.0);
      const double tq = conformable_deriv(q, a, t, 0.0);
      // (1) linearity
      worst = std::max(worst, std::abs(conformable_deriv([&](double x) {
        return 2.0 * f(x) - 3.0 * g(x);
      }, a, t, 0.0) - (2.0 * tf - 3.0 * tg)));
      // (2) power rule, checked against p t^{p - a}
      worst = std::max(worst, std::abs(tf - 2.0 * std::pow(t, 2.0 - a)));
      // (3) constants
      worst = std::max(worst, std::abs(conformable_deriv([](double) { return 7.0; }, a, t, 0.0)));
      // (4) product
      worst = std::max(worst, std::abs(conformable_deriv([&](double x) { return f(x) * g(x); },
                                                         a, t, 0.0) -
                                       (f(t) * tg + g(t) * tf)));
      // (5) quotient
      worst = std::max(worst, std::abs(conformable_deriv([&](double x) { return f(x) / q(x); },
                                                         a, t, 0.0) -
                                       (q(t) * tf - f(t) * tq) / (q(t) * q(t))));
      worst_unit = std::max(worst_unit, std::abs(conformable_deriv([a](double x) {
        return std::pow(x, a) / a;
      }, a, t, 0.0) - 1.0));
    }
  }
  o.require(worst <= 1e-5, "rule violation " + fmt(worst));
  o.require(worst_unit <= 1e-6, "T(t^a/a) - 1 = " + fmt(worst_unit));
  o.detail = o.pass ? "rules " + fmt(worst) + ", unit " + fmt(worst_unit) : o.detail;
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::pair<const char*, std::size_t> runs[] = {
      {"example1", 30}, {"example2", 60}, {"example3", 100}, {"example4", 20}, {"example5", 40}};
  std::string summary;
  for (const auto& [id, n] : runs) {
    const auto& ex = exact_registry(id);
    const double a = ex.default_alpha;
    const auto p = ex.problem(a, n);
    const auto [lo, hi] = ex.check_interval(a);
    const auto grid = linspace_grid(lo + 0.1 * (hi - lo), hi, 10, p.t0);
    const double r = residual(p, solve(p), grid).max_abs_residual;
    o.require(r <= 1e-4, std::string(id) + " residual " + fmt(r));
    summary += (summary.empty() ? "" : ", ") + fmt(r);
  }
  if (o.pass) o.detail = "residuals " + summary;
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(161803);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  const double alphas[] = {0.25, 0.5, 0.75, 1.0};
  std::uniform_int_distribution<int> pick(0, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = alphas[pick(rng)];
    const double ca = coef(rng), cb = coef(rng), y0 = coef(rng);
    const OdeProblem p{a, 0.0, a,
                       Expr::add(Expr::mul({Expr::constant(ca), Expr::unknown()}),
                                 Expr::constant(cb)),
                       {y0}, 30};
    const auto y = solve(p);
    // alpha (k + 1) Y(k + 1) = ca Y(k) + cb delta(k)
    double prev = y0;
    worst = std::max(worst, rel(y[0], prev));
    for (std::size_t k = 0; k < 30; ++k) {
      const double next = (ca * prev + (k == 0 ? cb : 0.0)) / (a * static_cast<double>(k + 1));
      worst = std::max(worst, rel(y[k + 1], next));
      prev = next;
    }
  }
  o.require(worst <= 1e-12, "rel err " + fmt(worst));
  o.detail = o.pass ? "rel err " + fmt(worst) + " over 100 problems" : o.detail;
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "cfdtm_acceptance_fig";
  std::filesystem::remove_all(dir);
  std::ostringstream out, err;
  if (cli::run_figure1(dir, out, err) != cli::kExitOk) {
    o.require(false, "run_figure1 failed: " + err.str());
    return o;
  }
  std::string summary;
  double at_one_06 = 0.0, at_one_09 = 0.0;
  for (const char* a : {"0.9", "0.8", "0.7", "0.6"}) {
    std::ifstream in(dir / (std::string("figure1_alpha_") + a + ".csv"));
    std::string line;
    std::getline(in, line);
    double early = 0.0, last = 0.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      double t = 0, exact = 0, series = 0;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &exact, &series) != 3) break;
      ++rows;
      if (t <= 0.6 + 1e-12) early = std::max(early, std::abs(series - exact));
      last = std::abs(series - exact);
    }
    o.require(rows == 101, std::string("alpha ") + a + ": " + std::to_string(rows) + " rows");
    o.require(early <= 0.02, std::string("alpha ") + a + ": max err on [0, 0.6] = " + fmt(early) +
                                 " > 0.02");
    if (std::string(a) == "0.6") at_one_06 = last;
    if (std::string(a) == "0.9") at_one_09 = last;
    summary += std::string(summary.empty() ? "" : ", ") + a + ":" + fmt(early);
  }
  o.require(at_one_06 > at_one_09, "err(1) at 0.6 = " + fmt(at_one_06) + " <= err(1) at 0.9 = " +
                                       fmt(at_one_09));
  std::filesystem::remove_all(dir);
  if (o.pass) {
    o.detail = "max err on [0, 0.6] " + summary;
  } else {
    o.detail += " (all: " + summary + "; err(1) 0.6 " + fmt(at_one_06) + " > 0.9 " +
                fmt(at_one_09) + ")";
  }
  return o;
}

Outcome criterion11() {
  Outcome o;
  const char* corpus[] = {
      "D[0.5] y = 1 - y^2",
      "D[0.5] y = 1 + 2*y + y^2",
      "D[0.5] y + y = 0",
      "D[2] y + D[1.5] y + y = 1 + t",
      "D[1.5] y = D[0.5] y",
      "-D[1] y = y",
      "2*D[1] y - 3*y = 4",
      "D[1] y = -y",
      "D[1] y = (y + 1)^3",
      "D[1] y = (1 - y)*(1 + y)",
      "D[0.5] y = exp(2*t^a/a)",
      "D[0.5] y = exp(-1.5*t^a/a) - y",
      "D[0.5] y = sin(3*t^a/a + 0.25)*y",
      "D[0.5] y = cos(-2*t^a/a - 1.5)",
      "D[0.5] y = t^1.5 + t",
      "D[0.25] y = t^0.75*y - t^0.25",
      "D[1.5] y = 0.5*D[1] y + 0.25*D[0.5] y*y",
      "D[1] y = 1 - (2 - (3 - y))",
      "D[1] y = y*y*y - 2*y^2",
      "D[1] y = -(y + exp(1*t^a/a))",
  };
  for (const char* src : corpus) {
    const auto first = cli::parse_equation(src, 0.25);
    const bool ok = first.ok() && [&] {
      const auto second = cli::parse_equation(cli::to_dsl(*first.ast), 0.25);
      return second.ast && *second.ast == *first.ast;
    }();
    o.require(ok, std::string("round trip failed: ") + src);
  }

  const char* malformed[] = {
      "",           "D[0.5] y",      "D[0.5 y = 1",        "D[] y = 1",
      "D[0.5] y = 1 +", "D[0.5] y = (1 + y", "D[0.5] y = y^1.5", "D[0.5] y = exp(2*t)",
      "D[0.5] y = 1 $ y", "D[0.7] y = y",
  };
  for (const char* src : malformed) {
    const auto r = cli::parse_equation(src, 0.5);
    o.require(!r.ok() && !r.diagnostics.empty(), std::string("accepted malformed: ") + src);
  }

  const auto bt = cli::parse_equation("1*D[2] y + 1*D[1.5] y + 1*y = 1 + t^1", 0.5);
  if (!bt.ok()) {
    o.require(false, "Bagley-Torvik input rejected");
    return o;
  }
  const auto y = solve({0.5, 0.0, bt.equation->beta_max, bt.equation->rhs, {1.0, 1.0}, 20});
  double tail = 0.0;
  for (std::size_t k = 4; k <= 20; ++k) tail = std::max(tail, std::abs(y[k]));
  const double err = max_err_on(y, [](double t) { return 1.0 + t; }, 0.0, 2.0, 50);
  o.require(y[0] == 1 && y[1] == 0 && y[2] == 1 && y[3] == 0, "Bagley-Torvik prefix");
  o.require(tail <= 1e-12 && err <= 1e-12, "Bagley-Torvik tail " + fmt(tail) + ", err " + fmt(err));
  if (o.pass) o.detail = "20 round trips, 10 malformed rejected, normalized solve exact";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"example1 coefficients and evaluation", criterion1},
      {"example2 coefficients and evaluation", criterion2},
      {"example3 coefficients and evaluation", criterion3},
      {"example4 coefficients and evaluation", criterion4},
      {"example5 coefficients and evaluation", criterion5},
      {"gamma ratio", criterion6},
      {"operator properties", criterion7},
      {"residuals", criterion8},
      {"linear problems vs unrolled recurrence", criterion9},
      {"figure 1 reproduction", criterion10},
      {"parser", criterion11},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %d: %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}

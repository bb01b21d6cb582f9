#include "cfdtm/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "cfdtm/cli/dsl.hpp"
#include "cfdtm/cli/format.hpp"
#include "cfdtm/oracle.hpp"
#include "cfdtm/series.hpp"

namespace cfdtm::cli {

namespace {

void print_coefficients(const FracSeries& y, std::ostream& out) {
  out << std::left << std::setw(6) << "k" << std::setw(26) << "Y(k)" << "rational\n";
  for (std::size_t k = 0; k < y.size(); ++k) {
    out << std::left << std::setw(6) << k << std::setw(26) << csv_number(y[k])
        << display_coefficient(y[k]) << '\n';
  }
}

std::string coefficient_list(const FracSeries& y, std::size_t max_terms) {
  std::string s = "[";
  for (std::size_t k = 0; k < std::min(max_terms, y.size()); ++k) {
    if (k > 0) s += ", ";
    s += display_coefficient(y[k]);
  }
  if (y.size() > max_terms) s += ", ...";
  return s + "]";
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

}  // namespace

int run_solve(const ProblemFile& file, std::ostream& out, std::ostream& err, std::ostream& csv) {
  const ProblemResult built = to_problem(file);
  if (!built.problem) {
    for (const auto& d : built.diagnostics) err << "error: " << d << '\n';
    return kExitDiagnostics;
  }
  const OdeProblem& p = *built.problem;

  const ExampleEntry* exact = nullptr;
  if (file.exact) {
    try {
      exact = &exact_registry(*file.exact);
    } catch (const std::out_of_range&) {
      err << "error: unknown exact solution '" << *file.exact << "' (expected example1..example5)\n";
      return kExitDiagnostics;
    }
  }

  std::vector<double> grid;
  try {
    grid = linspace_grid(file.grid.start, file.grid.stop, file.grid.count, p.t0);
  } catch (const std::exception& e) {
    err << "error: grid: " << e.what() << '\n';
    return kExitDiagnostics;
  }

  const FracSeries y = solve(p);
  out << "# alpha = " << short_number(p.alpha) << ", t0 = " << short_number(p.t0)
      << ", beta_max = " << short_number(p.beta_max) << ", N = " << p.n_terms << '\n';
  print_coefficients(y, out);

  csv << (exact ? "t,y_series,y_exact,abs_err\n" : "t,y_series\n");
  const RealFn exact_fn = exact ? exact->exact_fn(p.alpha) : RealFn{};
  for (double t : grid) {
    const double s = evaluate(y, t);
    csv << csv_number(t) << ',' << csv_number(s);
    if (exact) {
      const double e = exact_fn(t);
      csv << ',' << csv_number(e) << ',' << csv_number(std::abs(s - e));
    }
    csv << '\n';
  }
  csv.flush();
  if (!csv) {
    err << "error: failed writing CSV\n";
    return kExitIo;
  }
  return kExitOk;
}

int run_solve(const std::filesystem::path& file, const std::optional<std::filesystem::path>& csv_path,
              std::ostream& out, std::ostream& err) {
  const auto text = read_file(file);
  if (!text) {
    err << "error: cannot read " << file.string() << '\n';
    return kExitIo;
  }
  const ProblemFileResult parsed = parse_problem_file(*text);
  if (!parsed.file) {
    for (const auto& d : parsed.diagnostics) {
      err << file.string() << ": " << format_diagnostic(d) << '\n';
    }
    return kExitDiagnostics;
  }
  if (!csv_path) {
    std::ostringstream csv;
    const int rc = run_solve(*parsed.file, out, err, csv);
    if (rc == kExitOk) out << '\n' << csv.str();
    return rc;
  }
  std::ofstream csv(*csv_path, std::ios::binary);
  if (!csv) {
    err << "error: cannot write " << csv_path->string() << '\n';
    return kExitIo;
  }
  return run_solve(*parsed.file, out, err, csv);
}

int run_examples(const std::optional<std::string>& only, std::ostream& out, std::ostream& err) {
  std::vector<const ExampleEntry*> selected;
  if (only) {
    try {
      selected.push_back(&exact_registry(*only));
    } catch (const std::out_of_range&) {
      err << "error: unknown example '" << *only << "' (expected example1..example5)\n";
      return kExitDiagnostics;
    }
  } else {
    for (const auto& e : all_examples()) selected.push_back(&e);
  }

  out << std::left << std::setw(10) << "example" << std::setw(7) << "alpha" << std::setw(5) << "N"
      << std::setw(13) << "max_err" << std::setw(9) << "tol" << std::setw(13) << "max_resid"
      << std::setw(9) << "tol"
      << "result\n";
  bool all_pass = true;
  for (const ExampleEntry* e : selected) {
    const double alpha = e->default_alpha;
    const OdeProblem p = e->problem(alpha, e->check_terms);
    const auto [lo, hi] = e->check_interval(alpha);
    const auto grid = linspace_grid(lo, hi, 50, p.t0);
    const auto interior = linspace_grid(lo + 0.1 * (hi - lo), hi, 10, p.t0);

    const VerifyReport cmp = compare(p, e->exact_fn(alpha), grid);
    const FracSeries y = solve(p);
    const VerifyReport res = residual(p, y, interior);
    const bool pass = cmp.max_abs_error <= e->error_tol && res.max_abs_residual <= e->residual_tol;
    all_pass = all_pass && pass;

    std::ostringstream err_s, res_s;
    err_s << std::scientific << std::setprecision(3) << cmp.max_abs_error;
    res_s << std::scientific << std::setprecision(3) << res.max_abs_residual;
    out << std::left << std::setw(10) << e->id << std::setw(7) << short_number(alpha)
        << std::setw(5) << e->check_terms << std::setw(13) << err_s.str() << std::setw(9)
        << short_number(e->error_tol) << std::setw(13) << res_s.str() << std::setw(9)
        << short_number(e->residual_tol) << (pass ? "PASS" : "FAIL") << '\n';
    out << "    " << e->title << '\n';
    out << "    Y = " << coefficient_list(y, 10) << '\n';
    if (!e->note.empty()) out << "    note: " << e->note << '\n';
  }
  return all_pass ? kExitOk : kExitFailed;
}

int run_figure1(const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err) {
  constexpr std::size_t kTerms = 10;
  constexpr std::size_t kPoints = 101;
  const std::vector<double> alphas = {0.9, 0.8, 0.7, 0.6};

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    err << "error: cannot create " << out_dir.string() << ": " << ec.message() << '\n';
    return kExitIo;
  }

  const ExampleEntry& ex3 = exact_registry("example3");
  const auto grid = linspace_grid(0.0, 1.0, kPoints, 0.0);

  // The four problems are independent.
  std::vector<std::future<VerifyReport>> jobs;
  for (double a : alphas) {
    jobs.push_back(std::async(std::launch::async, [&ex3, &grid, a] {
      return compare(ex3.problem(a, kTerms), ex3.exact_fn(a), grid);
    }));
  }

  out << "alpha  file                      max_err[0,0.6]  err(t=1)\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const VerifyReport rep = jobs[i].get();
    const std::string name = "figure1_alpha_" + short_number(alphas[i]) + ".csv";
    std::ofstream csv(out_dir / name, std::ios::binary);
    if (!csv) {
      err << "error: cannot write " << (out_dir / name).string() << '\n';
      return kExitIo;
    }
    csv << "t,exact,cfdtm\n";
    double max_early = 0.0;
    for (std::size_t j = 0; j < rep.points.size(); ++j) {
      const double diff = std::abs(rep.series_values[j] - (*rep.exact_values)[j]);
      if (rep.points[j] <= 0.6 + 1e-12) max_early = std::max(max_early, diff);
      csv << csv_number(rep.points[j]) << ',' << csv_number((*rep.exact_values)[j]) << ','
          << csv_number(rep.series_values[j]) << '\n';
    }
    csv.flush();
    if (!csv) {
      err << "error: failed writing " << (out_dir / name).string() << '\n';
      return kExitIo;
    }
    const double at_one = std::abs(rep.series_values.back() - rep.exact_values->back());
    std::ostringstream early_s, one_s;
    early_s << std::scientific << std::setprecision(3) << max_early;
    one_s << std::scientific << std::setprecision(3) << at_one;
    out << std::left << std::setw(7) << short_number(alphas[i]) << std::setw(26) << name
        << std::setw(16) << early_s.str() << one_s.str() << '\n';
  }
  return kExitOk;
}

int run_transform(const std::string& spec, double alpha, double t0, std::size_t len,
                  std::ostream& out, std::ostream& err) {
  const FunctionSpecResult parsed = parse_function_spec(spec);
  if (!parsed.expr) {
    for (const auto& d : parsed.diagnostics) err << "error: " << format_diagnostic(d) << '\n';
    return kExitDiagnostics;
  }
  if (len == 0) {
    err << "error: --terms must be >= 1\n";
    return kExitDiagnostics;
  }
  try {
    const Expr& e = *parsed.expr;
    std::optional<FracSeries> s;
    switch (e.kind()) {
      case ExprKind::ExpSrc: s = exp_transform(e.param(), alpha, t0, len); break;
      case ExprKind::SinSrc: s = sin_transform(e.param(), e.phase(), alpha, t0, len); break;
      case ExprKind::CosSrc: s = cos_transform(e.param(), e.phase(), alpha, t0, len); break;
      case ExprKind::Monomial: s = monomial_transform(e.param(), alpha, t0, len); break;
      default: break;
    }
    out << "# transform of " << to_dsl(e) << " with alpha = " << short_number(alpha)
        << ", t0 = " << short_number(t0) << '\n';
    print_coefficients(*s, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitDiagnostics;
  }
  return kExitOk;
}

}  // namespace cfdtm::cli

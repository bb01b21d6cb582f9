#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cfdtm/cli/problem_file.hpp"

namespace cfdtm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitDiagnostics = 2,
  kExitFailed = 3,  // examples ran but at least one missed its tolerance
};

// Prints the coefficient table to out and writes the grid CSV
// (t, y_series[, y_exact, abs_err]) to csv.
int run_solve(const ProblemFile& file, std::ostream& out, std::ostream& err, std::ostream& csv);

// Reads the .prob file; CSV goes to csv_path when given, else to out after the table.
int run_solve(const std::filesystem::path& file, const std::optional<std::filesystem::path>& csv_path,
              std::ostream& out, std::ostream& err);

// Runs solve/compare/residual for the built-in examples (all, or one id).
// Exit 0 iff every selected example is within tolerance.
int run_examples(const std::optional<std::string>& only, std::ostream& out, std::ostream& err);

// Four CSVs figure1_alpha_<a>.csv (t, exact, cfdtm) for example3 with N = 10.
int run_figure1(const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

// Known-transform coefficients of exp/sin/cos/t^p.
int run_transform(const std::string& spec, double alpha, double t0, std::size_t len,
                  std::ostream& out, std::ostream& err);

}  // namespace cfdtm::cli

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfdtm/solver.hpp"

namespace cfdtm::cli {

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 101;
};

/// Contents of a .prob file:
///
///   # comment
///   alpha    = 0.5
///   t0       = 0                 (optional, default 0)
///   equation = D[0.5] y = 1 - y^2
///   init     = 0                 (y(t0), y'(t0), ... ascending)
///   n_terms  = 20
///   grid     = 0, 1, 101         (start, stop, count)
///   exact    = example3          (optional)
struct ProblemFile {
  double alpha = 0.0;
  double t0 = 0.0;
  std::string equation;
  std::vector<double> init;
  std::size_t n_terms = 0;
  GridSpec grid;
  std::optional<std::string> exact;
};

struct FileDiagnostic {
  std::size_t line = 0;  // 0 when not tied to a line
  std::string message;
};

std::string format_diagnostic(const FileDiagnostic& d);

struct ProblemFileResult {
  std::optional<ProblemFile> file;
  std::vector<FileDiagnostic> diagnostics;
};

ProblemFileResult parse_problem_file(std::string_view text);

struct ProblemResult {
  std::optional<OdeProblem> problem;
  std::vector<std::string> diagnostics;
};

// Parses the equation and runs the solver's validation.
ProblemResult to_problem(const ProblemFile& file);

}  // namespace cfdtm::cli

#include "cfdtm/cli/problem_file.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "cfdtm/cli/dsl.hpp"

namespace cfdtm::cli {

std::string format_diagnostic(const FileDiagnostic& d) {
  if (d.line == 0) return d.message;
  return "line " + std::to_string(d.line) + ": " + d.message;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::size_t> parse_count(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    parts.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

ProblemFileResult parse_problem_file(std::string_view text) {
  ProblemFileResult res;
  ProblemFile pf;
  std::set<std::string> seen;
  const auto diag = [&](std::size_t line, std::string msg) {
    res.diagnostics.push_back({line, std::move(msg)});
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      diag(line_no, "expected 'key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      diag(line_no, "duplicate key '" + key + "'");
      continue;
    }

    if (key == "alpha" || key == "t0") {
      const auto v = parse_real(value);
      if (!v) {
        diag(line_no, key + " must be a real number");
      } else {
        (key == "alpha" ? pf.alpha : pf.t0) = *v;
      }
    } else if (key == "equation") {
      // The equation itself contains '='; take everything after the first one.
      pf.equation = std::string(value);
      if (pf.equation.empty()) diag(line_no, "equation is empty");
    } else if (key == "init") {
      pf.init.clear();
      for (auto part : split_commas(value)) {
        const auto v = parse_real(part);
        if (!v) {
          diag(line_no, "init must be a comma-separated list of reals");
          break;
        }
        pf.init.push_back(*v);
      }
    } else if (key == "n_terms") {
      const auto v = parse_count(value);
      if (!v) {
        diag(line_no, "n_terms must be a non-negative integer");
      } else {
        pf.n_terms = *v;
      }
    } else if (key == "grid") {
      const auto parts = split_commas(value);
      std::optional<GridSpec> g;
      if (parts.size() == 3) {
        const auto a = parse_real(parts[0]);
        const auto b = parse_real(parts[1]);
        const auto n = parse_count(parts[2]);
        if (a && b && n && *n > 0) g = GridSpec{*a, *b, *n};
      }
      if (!g) {
        diag(line_no, "grid must be 'start, stop, count' with count >= 1");
      } else {
        pf.grid = *g;
      }
    } else if (key == "exact") {
      pf.exact = std::string(value);
    } else {
      diag(line_no, "unknown key '" + key + "'");
    }
  }

  for (const char* required : {"alpha", "equation", "init", "n_terms", "grid"}) {
    if (!seen.contains(required)) diag(0, std::string("missing required key '") + required + "'");
  }
  if (res.diagnostics.empty()) res.file = std::move(pf);
  return res;
}

ProblemResult to_problem(const ProblemFile& file) {
  ProblemResult res;
  const ParseResult parsed = parse_equation(file.equation, file.alpha);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) res.diagnostics.push_back(format_diagnostic(d));
    return res;
  }
  OdeProblem p{file.alpha, file.t0, parsed.equation->beta_max, parsed.equation->rhs, file.init,
               file.n_terms};
  for (const auto& d : validate(p)) {
    res.diagnostics.push_back("[" + std::string(to_string(d.code)) + "] " + d.path + ": " +
                              d.message);
  }
  if (res.diagnostics.empty()) res.problem = std::move(p);
  return res;
}

}  // namespace cfdtm::cli

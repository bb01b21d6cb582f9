#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfdtm/expr.hpp"

namespace cfdtm::cli {

// One c * D[beta] y (or c * y when order is empty) on the left-hand side.
struct LhsTerm {
  double coeff = 1.0;
  std::optional<double> order;

  friend bool operator==(const LhsTerm&, const LhsTerm&) = default;
};

/// Parsed equation  sum_i c_i D[beta_i] y = rhs, before isolating the
/// highest-order term.
struct DslAst {
  std::vector<LhsTerm> lhs;
  Expr rhs = Expr::constant(0.0);

  friend bool operator==(const DslAst&, const DslAst&) = default;
};

struct ParseDiagnostic {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string message;
  // Tokens that would have been accepted at this position (syntax errors only).
  std::vector<std::string> expected;
};

std::string format_diagnostic(const ParseDiagnostic& d);

// Explicit form  T_{beta_max} y = rhs.
struct LoweredEquation {
  double beta_max = 1.0;
  Expr rhs = Expr::constant(0.0);
};

struct ParseResult {
  // Present whenever the text is syntactically valid.
  std::optional<DslAst> ast;
  // Present when the equation is also valid for the given alpha.
  std::optional<LoweredEquation> equation;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return equation.has_value() && diagnostics.empty(); }
};

/// Grammar:
///
///   equation := lhs "=" expr
///   lhs      := ["-"] term (("+" | "-") term)*
///   term     := [number "*"] "D[" number "]" "y" | [number "*"] "y"
///   expr     := expr ("+" | "-") mul | mul
///   mul      := mul "*" atom | atom
///   atom     := number | "y" | "y" "^" integer | "D[" number "]" "y"
///             | "t" | "t" "^" number
///             | "exp(" number "*t^a/a)"
///             | "sin(" number "*t^a/a" [("+" | "-") number] ")"
///             | "cos(" number "*t^a/a" [("+" | "-") number] ")"
///             | "(" expr ")" ["^" integer] | "-" atom
///
/// Numbers inside D[...], exp(...), sin(...) and cos(...) may carry a leading
/// "-". Order and representability checks against alpha are reported at the
/// offending token. Never throws; every failure is a diagnostic.
ParseResult parse_equation(std::string_view src, double alpha);

// Isolates the highest-order lhs term and divides through by its coefficient.
// alpha is used for the order checks; diagnostics carry no source position.
ParseResult lower(const DslAst& ast, double alpha);

struct FunctionSpecResult {
  std::optional<Expr> expr;
  std::vector<ParseDiagnostic> diagnostics;
};

// One of exp(L*t^a/a), sin(w*t^a/a + c), cos(w*t^a/a + c), t^p.
FunctionSpecResult parse_function_spec(std::string_view src);

// Canonical DSL text; parse(print(ast)) == ast.
std::string to_dsl(const DslAst& ast);
std::string to_dsl(const Expr& e);

}  // namespace cfdtm::cli

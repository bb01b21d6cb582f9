#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cfdtm/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Conformable fractional differential transform solver"};
  app.require_subcommand(1);

  std::string prob_file;
  std::string csv_path;
  auto* solve = app.add_subcommand("solve", "Solve the equation in a .prob file");
  solve->add_option("file", prob_file, "Problem file")->required();
  solve->add_option("--csv", csv_path, "Write the grid CSV here instead of stdout");

  std::string only;
  auto* examples = app.add_subcommand("examples", "Run the built-in worked examples");
  examples->add_option("--only", only, "Run a single example (example1..example5)");

  std::string out_dir;
  auto* figure = app.add_subcommand("figure1", "Write example3 comparison CSVs for four alphas");
  figure->add_option("--out", out_dir, "Output directory")->required();

  std::string spec;
  double alpha = 1.0;
  double t0 = 0.0;
  std::size_t terms = 10;
  auto* transform = app.add_subcommand(
      "transform", "Print transform coefficients of exp(L*t^a/a), sin/cos(w*t^a/a + c) or t^p");
  transform->add_option("function", spec, "Function spec")->required();
  transform->add_option("--alpha", alpha, "Fractional order in (0, 1]")->required();
  transform->add_option("--t0", t0, "Base point");
  transform->add_option("--terms", terms, "Number of coefficients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cfdtm::cli::kExitDiagnostics;
  }

  using namespace cfdtm::cli;
  if (*solve) {
    std::optional<std::filesystem::path> csv;
    if (!csv_path.empty()) csv = csv_path;
    return run_solve(prob_file, csv, std::cout, std::cerr);
  }
  if (*examples) {
    return run_examples(only.empty() ? std::nullopt : std::optional<std::string>(only), std::cout,
                        std::cerr);
  }
  if (*figure) return run_figure1(out_dir, std::cout, std::cerr);
  return run_transform(spec, alpha, t0, terms, std::cout, std::cerr);
}

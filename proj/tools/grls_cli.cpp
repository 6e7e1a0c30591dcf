// Command-line front end for the geometrically robust least squares solver.
//
// Subcommands:
//   reproduce-example [--out DIR]   run the built-in 2-dimensional example
//   solve <config> [--out DIR]      run an arbitrary configured instance
//   check-grad <config>             finite-difference gradient validation
//   oracle <config> [--out DIR]     brute-force minimax reference comparison
//
// Exit codes: 0 success, 1 validation/config error, 2 numerical failure,
// 3 check failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "grls/grls.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  bool dump_config = false;
};

/// Load, override, and validate a run configuration; prints every problem
/// found and returns nullopt on failure.
std::optional<grls::RunConfig> load_config(const std::string& path,
                                           const GlobalOptions& global,
                                           const std::optional<std::string>& out_dir) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read config file '" << path << "'\n";
    return std::nullopt;
  }
  grls::ParsedConfig parsed = grls::parse_run_config(*text);
  if (global.seed) parsed.config.seed = *global.seed;
  if (out_dir) parsed.config.output_dir = *out_dir;
  auto errors = parsed.errors;
  for (const auto& e : grls::validate_run_config(parsed.config)) errors.push_back(e);
  if (!errors.empty()) {
    std::cerr << "invalid configuration '" << path << "':\n";
    for (const auto& e : errors) std::cerr << "  " << e << "\n";
    return std::nullopt;
  }
  return parsed.config;
}

int dump(const grls::RunConfig& cfg) {
  std::cout << grls::dump_run_config(cfg);
  return grls::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometrically robust least squares over R^n x Gr(k,n)"};
  app.require_subcommand(1);

  GlobalOptions global;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Override the run seed");
  app.add_flag("--dump-config", global.dump_config,
               "Print the effective configuration and exit");

  std::string solve_config, check_config, oracle_config;
  std::optional<std::string> solve_out, repro_out, oracle_out;
  bool corrupt = false;

  auto* repro = app.add_subcommand("reproduce-example", "Run the built-in example");
  repro->add_option("--out", repro_out, "Output directory");

  auto* solve = app.add_subcommand("solve", "Run a configured instance");
  solve->add_option("config", solve_config, "Path to a run configuration")->required();
  solve->add_option("--out", solve_out, "Output directory (overrides output_dir)");

  auto* check = app.add_subcommand("check-grad", "Validate gradients by finite differences");
  check->add_option("config", check_config, "Path to a run configuration")->required();
  check->add_flag("--corrupt-gradient", corrupt,
                  "Deliberately corrupt the closed-form gradient (negative control)")
      ->group("");  // hidden

  auto* oracle = app.add_subcommand("oracle", "Compare against the brute-force reference");
  oracle->add_option("config", oracle_config, "Path to a run configuration")->required();
  oracle->add_option("--out", oracle_out, "Output directory (overrides output_dir)");

  for (auto* sub : {repro, solve, check, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return grls::kExitConfigError;
  }
  if (seed_opt->count() > 0) global.seed = seed_value;

  try {
    if (repro->parsed()) {
      grls::RunConfig cfg;
      cfg.output_dir = repro_out.value_or(cfg.output_dir);
      if (global.seed) cfg.seed = *global.seed;
      if (global.dump_config) return dump(cfg);
      return grls::cmd_solve(cfg);
    }
    if (solve->parsed()) {
      const auto cfg = load_config(solve_config, global, solve_out);
      if (!cfg) return grls::kExitConfigError;
      if (global.dump_config) return dump(*cfg);
      return grls::cmd_solve(*cfg);
    }
    if (check->parsed()) {
      const auto cfg = load_config(check_config, global, std::nullopt);
      if (!cfg) return grls::kExitConfigError;
      if (global.dump_config) return dump(*cfg);
      return grls::cmd_check_grad(*cfg, corrupt);
    }
    if (oracle->parsed()) {
      const auto cfg = load_config(oracle_config, global, oracle_out);
      if (!cfg) return grls::kExitConfigError;
      if (global.dump_config) return dump(*cfg);
      return grls::cmd_oracle(*cfg);
    }
  } catch (const grls::DivergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return grls::kExitNumericalFailure;
  } catch (const grls::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return grls::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return grls::kExitConfigError;
  }
  return grls::kExitConfigError;
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "grls/errors.hpp"
#include "grls/grassmann.hpp"
#include "grls/objective.hpp"
#include "grls/oracles.hpp"
#include "grls/solver.hpp"

namespace grls {

/// Exit codes shared by all CLI commands.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitNumericalFailure = 2,
  kExitCheckFailure = 3,
};

/// Gap tolerance for the oracle-vs-solver comparison in cmd_oracle.
inline constexpr double kOracleGapTol = 1e-2;
/// Tolerances for the gradient check command.
inline constexpr double kGradCheckTolX = 1e-5;
inline constexpr double kGradCheckTolY = 1e-4;

/// A full run configuration. Defaults reproduce the 2-dimensional example:
/// nominal subspace span(e1), b at angle pi/16, ball radius sin(pi/8),
/// lambda = 70, u = 0.01, eta_x = 0.01, eta_y = 0.1.
struct RunConfig {
  int n = 2;
  int k = 1;
  std::vector<double> b = {std::cos(std::numbers::pi / 16.0),
                           std::sin(std::numbers::pi / 16.0)};
  /// Either the preset "e1" (span of the first k coordinate axes) or n*k
  /// column-major entries of a full-rank n x k matrix.
  std::string y_hat = "e1";
  double rho = std::sin(std::numbers::pi / 8.0);
  double lambda = 70.0;
  double u = 0.01;
  double eta_x = 0.01;
  double eta_y = 0.1;
  long max_iters = 50000;
  double grad_tol = 1e-6;
  std::uint64_t seed = 0;
  long record_every = 1;
  std::string output_dir = "out";
  double plot_range = 1.5;
};

namespace io {

/// Doubles are serialized with 17 significant digits so that every value
/// round-trips bit-exactly through the text formats.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

inline bool parse_long(const std::string& s, long& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtol(begin, &end, 10);
  return end != begin && *end == '\0';
}

inline bool parse_u64(const std::string& s, std::uint64_t& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtoull(begin, &end, 10);
  return end != begin && *end == '\0' && s.find('-') == std::string::npos;
}

inline bool parse_double_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) return false;
    double v = 0.0;
    if (!parse_double(item, v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

/// Write-temp-then-rename so readers never observe a partial file.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_points_csv(const std::filesystem::path& path,
                             const std::vector<std::pair<double, double>>& points) {
  std::string content = "x,y\n";
  for (const auto& [x, y] : points) {
    content += format_double(x) + "," + format_double(y) + "\n";
  }
  write_text_atomic(path, content);
}

inline void write_gradient_csv(const std::filesystem::path& path,
                               const std::vector<TraceEntry>& trace) {
  std::string content = "iter,grad_norm\n";
  for (const auto& entry : trace) {
    content += std::to_string(entry.iter) + "," + format_double(entry.grad_norm) + "\n";
  }
  write_text_atomic(path, content);
}

inline void write_key_values(const std::filesystem::path& path,
                             const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string content;
  for (const auto& [key, value] : kv) {
    content += key + " = " + value + "\n";
  }
  write_text_atomic(path, content);
}

}  // namespace io

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> errors;  ///< empty iff the text parsed cleanly
};

/// Parse the flat key-value configuration format: one `key = value` per
/// line, `#` starts a comment. All syntax errors are collected, not just the
/// first one.
inline ParsedConfig parse_run_config(const std::string& text) {
  ParsedConfig out;
  RunConfig& cfg = out.config;
  std::vector<std::string>& errors = out.errors;
  std::stringstream stream(text);
  std::string raw;
  int line_no = 0;
  std::vector<std::string> seen;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = io::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key = io::trim(line.substr(0, eq));
    const std::string value = io::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": empty key or value");
      continue;
    }
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    seen.push_back(key);

    auto bad = [&](const std::string& what) {
      errors.push_back("line " + std::to_string(line_no) + ": field '" + key +
                       "' " + what + " (got '" + value + "')");
    };
    long l = 0;
    double d = 0.0;
    if (key == "n") {
      if (io::parse_long(value, l)) cfg.n = static_cast<int>(l); else bad("expects an integer");
    } else if (key == "k") {
      if (io::parse_long(value, l)) cfg.k = static_cast<int>(l); else bad("expects an integer");
    } else if (key == "b") {
      if (!io::parse_double_list(value, cfg.b)) bad("expects a comma-separated list of reals");
    } else if (key == "y_hat") {
      std::vector<double> cols;
      if (value == "e1" || io::parse_double_list(value, cols)) cfg.y_hat = value;
      else bad("expects 'e1' or a comma-separated list of reals");
    } else if (key == "rho") {
      if (io::parse_double(value, d)) cfg.rho = d; else bad("expects a real");
    } else if (key == "lambda") {
      if (io::parse_double(value, d)) cfg.lambda = d; else bad("expects a real");
    } else if (key == "u") {
      if (io::parse_double(value, d)) cfg.u = d; else bad("expects a real");
    } else if (key == "eta_x") {
      if (io::parse_double(value, d)) cfg.eta_x = d; else bad("expects a real");
    } else if (key == "eta_y") {
      if (io::parse_double(value, d)) cfg.eta_y = d; else bad("expects a real");
    } else if (key == "max_iters") {
      if (io::parse_long(value, l)) cfg.max_iters = l; else bad("expects an integer");
    } else if (key == "grad_tol") {
      if (io::parse_double(value, d)) cfg.grad_tol = d; else bad("expects a real");
    } else if (key == "seed") {
      std::uint64_t s = 0;
      if (io::parse_u64(value, s)) cfg.seed = s; else bad("expects a nonnegative integer");
    } else if (key == "record_every") {
      if (io::parse_long(value, l)) cfg.record_every = l; else bad("expects an integer");
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "plot_range") {
      if (io::parse_double(value, d)) cfg.plot_range = d; else bad("expects a real");
    } else {
      errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return out;
}

/// Semantic validation; returns every violated invariant, named by field.
inline std::vector<std::string> validate_run_config(const RunConfig& cfg) {
  std::vector<std::string> errors;
  if (cfg.n < 1) errors.push_back("n: must be a positive integer");
  if (cfg.k < 1) errors.push_back("k: must be a positive integer");
  if (cfg.k >= 1 && cfg.n >= 1 && cfg.k > cfg.n) errors.push_back("k: must satisfy k <= n");
  if (cfg.n >= 1 && static_cast<int>(cfg.b.size()) != cfg.n) {
    errors.push_back("b: must list exactly n = " + std::to_string(cfg.n) + " values");
  }
  if (cfg.y_hat != "e1") {
    std::vector<double> cols;
    if (!io::parse_double_list(cfg.y_hat, cols)) {
      errors.push_back("y_hat: must be 'e1' or a comma-separated list of reals");
    } else if (cfg.n >= 1 && cfg.k >= 1 &&
               static_cast<int>(cols.size()) != cfg.n * cfg.k) {
      errors.push_back("y_hat: must list n*k = " + std::to_string(cfg.n * cfg.k) +
                       " values (column-major)");
    }
  }
  if (cfg.k >= 1 && !(cfg.rho > 0.0 && cfg.rho < std::sqrt(static_cast<double>(cfg.k)))) {
    errors.push_back("rho: must satisfy 0 < rho < sqrt(k) (the ball is otherwise empty "
                     "or all of Gr(k,n))");
  }
  if (!(cfg.lambda >= 0.0)) errors.push_back("lambda: must be nonnegative");
  if (!(cfg.u > 0.0)) errors.push_back("u: must be positive");
  if (!(cfg.eta_x > 0.0)) errors.push_back("eta_x: must be positive");
  if (!(cfg.eta_y >= 0.0)) errors.push_back("eta_y: must be nonnegative");
  if (cfg.max_iters < 1) errors.push_back("max_iters: must be a positive integer");
  if (!(cfg.grad_tol > 0.0)) errors.push_back("grad_tol: must be positive");
  if (cfg.record_every < 1) errors.push_back("record_every: must be >= 1");
  if (cfg.output_dir.empty()) errors.push_back("output_dir: must not be empty");
  if (!(cfg.plot_range > 0.0)) errors.push_back("plot_range: must be positive");
  return errors;
}

/// Canonical serialization; parse_run_config(dump_run_config(cfg)) restores
/// an identical configuration.
inline std::string dump_run_config(const RunConfig& cfg) {
  std::string out;
  out += "n = " + std::to_string(cfg.n) + "\n";
  out += "k = " + std::to_string(cfg.k) + "\n";
  out += "b = " + io::format_list(cfg.b) + "\n";
  out += "y_hat = " + cfg.y_hat + "\n";
  out += "rho = " + io::format_double(cfg.rho) + "\n";
  out += "lambda = " + io::format_double(cfg.lambda) + "\n";
  out += "u = " + io::format_double(cfg.u) + "\n";
  out += "eta_x = " + io::format_double(cfg.eta_x) + "\n";
  out += "eta_y = " + io::format_double(cfg.eta_y) + "\n";
  out += "max_iters = " + std::to_string(cfg.max_iters) + "\n";
  out += "grad_tol = " + io::format_double(cfg.grad_tol) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  out += "record_every = " + std::to_string(cfg.record_every) + "\n";
  out += "output_dir = " + cfg.output_dir + "\n";
  out += "plot_range = " + io::format_double(cfg.plot_range) + "\n";
  return out;
}

inline bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.n == b.n && a.k == b.k && a.b == b.b && a.y_hat == b.y_hat && a.rho == b.rho &&
         a.lambda == b.lambda && a.u == b.u && a.eta_x == b.eta_x && a.eta_y == b.eta_y &&
         a.max_iters == b.max_iters && a.grad_tol == b.grad_tol && a.seed == b.seed &&
         a.record_every == b.record_every && a.output_dir == b.output_dir &&
         a.plot_range == b.plot_range;
}

/// Materialize the problem instance described by a (validated) RunConfig.
inline ProblemInstance make_instance(const RunConfig& cfg) {
  Matrix y_hat(cfg.n, cfg.k);
  if (cfg.y_hat == "e1") {
    y_hat = Matrix::Identity(cfg.n, cfg.k);
  } else {
    std::vector<double> cols;
    if (!io::parse_double_list(cfg.y_hat, cols) ||
        static_cast<int>(cols.size()) != cfg.n * cfg.k) {
      throw Error("make_instance: invalid y_hat");
    }
    for (int j = 0; j < cfg.k; ++j) {
      for (int i = 0; i < cfg.n; ++i) {
        y_hat(i, j) = cols[static_cast<std::size_t>(j) * cfg.n + i];
      }
    }
  }
  Vector b(cfg.n);
  for (int i = 0; i < cfg.n; ++i) b(i) = cfg.b[static_cast<std::size_t>(i)];
  return ProblemInstance(std::move(b), span_of(y_hat), cfg.rho);
}

inline SolverConfig make_solver_config(const RunConfig& cfg) {
  SolverConfig sc;
  sc.eta_x = cfg.eta_x;
  sc.eta_y = cfg.eta_y;
  sc.max_iters = cfg.max_iters;
  sc.grad_tol = cfg.grad_tol;
  sc.seed = cfg.seed;
  sc.record_every = cfg.record_every;
  return sc;
}

inline PenaltyParams make_penalty(const RunConfig& cfg) {
  return PenaltyParams(cfg.lambda, cfg.u);
}

namespace io {

/// Endpoints of the line segment for a 1-dimensional subspace of R^2.
inline std::vector<std::pair<double, double>> line_segment(const GrassmannPoint& y,
                                                           double half_width) {
  const double c = y.rep().matrix()(0, 0);
  const double s = y.rep().matrix()(1, 0);
  return {{-half_width * c, -half_width * s}, {half_width * c, half_width * s}};
}

inline std::vector<std::pair<double, double>> angle_segment(double angle, double half_width) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{-half_width * c, -half_width * s}, {half_width * c, half_width * s}};
}

}  // namespace io

/// Write every artifact of one solve into `output_dir`. Figure CSVs are only
/// meaningful (and only written) for n = 2, k = 1; the gradient trace and the
/// summary are always written.
inline void write_run_outputs(const RunConfig& cfg, const ProblemInstance& inst,
                              const SolveResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  io::write_gradient_csv(dir / "gradient_norm.csv", result.trace);

  const double d_final = chordal_distance(result.final_point.y, inst.y_hat());
  const double violation = std::max(0.0, d_final - inst.rho());
  const PenaltyParams params = make_penalty(cfg);

  if (cfg.n == 2 && cfg.k == 1) {
    const double alpha_hat = detail::line_angle(inst.y_hat());
    const double arc = std::asin(std::min(inst.rho(), 1.0));
    io::write_points_csv(dir / "S.csv", io::line_segment(inst.y_hat(), cfg.plot_range));
    io::write_points_csv(dir / "S_star.csv",
                         io::line_segment(result.final_point.y, cfg.plot_range));
    io::write_points_csv(dir / "ball_boundary_upper.csv",
                         io::angle_segment(alpha_hat + arc, cfg.plot_range));
    io::write_points_csv(dir / "ball_boundary_lower.csv",
                         io::angle_segment(alpha_hat - arc, cfg.plot_range));
    io::write_points_csv(dir / "b.csv", {{inst.b()(0), inst.b()(1)}});
    std::vector<std::pair<double, double>> iterates;
    iterates.reserve(result.trace.size());
    for (const auto& entry : result.trace) {
      iterates.emplace_back(entry.projected(0), entry.projected(1));
    }
    io::write_points_csv(dir / "x_iterates.csv", iterates);
    const Matrix& y = result.final_point.y.rep().matrix();
    const Vector projected = y * (y.transpose() * result.final_point.x);
    io::write_points_csv(dir / "x_star.csv", {{projected(0), projected(1)}});
  }

  // Ordinary least squares on the nominal subspace, as the non-robust
  // reference value.
  const Matrix& y_hat = inst.y_hat().rep().matrix();
  const double baseline_cost =
      (y_hat * baseline_ls_solve(y_hat, inst.b()) - inst.b()).squaredNorm();

  std::vector<double> x_final(result.final_point.x.data(),
                              result.final_point.x.data() + result.final_point.x.size());
  std::vector<std::pair<std::string, std::string>> kv = {
      {"n", std::to_string(cfg.n)},
      {"k", std::to_string(cfg.k)},
      {"rho", io::format_double(inst.rho())},
      {"lambda", io::format_double(cfg.lambda)},
      {"u", io::format_double(cfg.u)},
      {"seed", std::to_string(cfg.seed)},
      {"converged", result.converged ? "true" : "false"},
      {"iters_run", std::to_string(result.iters_run)},
      {"grad_norm_final", io::format_double(result.trace.empty()
                                                ? std::numeric_limits<double>::quiet_NaN()
                                                : result.trace.back().grad_norm)},
      {"cost_final", io::format_double(cost(result.final_point, inst))},
      {"penalized_value_final",
       io::format_double(penalized_value(result.final_point, inst, params))},
      {"baseline_ls_cost", io::format_double(baseline_cost)},
      {"x_final", io::format_list(x_final)},
      {"distance_to_center", io::format_double(d_final)},
      {"constraint_violation", io::format_double(violation)},
      {"constraint_violated", violation > 0.0 ? "true" : "false"},
  };
  io::write_key_values(dir / "summary.txt", kv);
}

/// `solve` command: run the configured instance and write its artifacts.
inline int cmd_solve(const RunConfig& cfg) {
  const ProblemInstance inst = make_instance(cfg);
  try {
    const SolveResult result = solve(inst, make_penalty(cfg), make_solver_config(cfg));
    write_run_outputs(cfg, inst, result);
    return kExitOk;
  } catch (const DivergenceError& e) {
    // Keep what was recorded so the failure can be inspected.
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    io::write_gradient_csv(fs::path(cfg.output_dir) / "gradient_norm.csv", e.partial_trace());
    io::write_key_values(fs::path(cfg.output_dir) / "summary.txt",
                         {{"diverged", "true"},
                          {"iteration", std::to_string(e.iteration())},
                          {"message", e.what()}});
    std::cerr << "solve diverged: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

/// `reproduce-example` command: the default configuration end to end.
inline int cmd_reproduce_example(const std::string& output_dir, std::uint64_t seed = 0) {
  RunConfig cfg;
  cfg.output_dir = output_dir;
  cfg.seed = seed;
  return cmd_solve(cfg);
}

struct GradCheckReport {
  double worst_rel_x = 0.0;
  double worst_rel_y = 0.0;
  bool passed = false;
};

/// Compare the closed-form gradients against the finite-difference oracles
/// at random points of the configured instance. `corrupt` deliberately
/// perturbs the closed form; it exists as a negative control for the exit
/// code contract.
inline GradCheckReport run_grad_check(const RunConfig& cfg, bool corrupt = false) {
  const ProblemInstance inst = make_instance(cfg);
  const PenaltyParams params = make_penalty(cfg);
  GradCheckReport report;
  constexpr int kPoints = 20;
  constexpr int kDirections = 10;
  for (int trial = 0; trial < kPoints; ++trial) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(trial);
    ObjectivePoint p = random_init(inst, seed);
    PenalizedGrads g = penalized_grads(p, inst, params);
    if (corrupt) g.grad_x(0) += 1e-3;

    const Vector fd = fd_grad_x(p, inst, params, 1e-6);
    const double rel_x = (g.grad_x - fd).norm() / std::max(fd.norm(), 1e-10);
    report.worst_rel_x = std::max(report.worst_rel_x, rel_x);

    for (int j = 0; j < kDirections; ++j) {
      const HorizontalTangent dir =
          random_tangent(p.y.rep(), seed * 1000 + static_cast<std::uint64_t>(j) + 1, 1.0);
      if (dir.norm() < 1e-12) continue;
      const double fd_dir = fd_dirderiv_y(p, dir, inst, params, 1e-5);
      const double analytic = (g.grad_y.matrix().array() * dir.matrix().array()).sum();
      const double rel_y = std::abs(analytic - fd_dir) / std::max(std::abs(fd_dir), 1e-10);
      report.worst_rel_y = std::max(report.worst_rel_y, rel_y);
    }
  }
  report.passed = report.worst_rel_x <= kGradCheckTolX && report.worst_rel_y <= kGradCheckTolY;
  return report;
}

/// `check-grad` command.
inline int cmd_check_grad(const RunConfig& cfg, bool corrupt = false) {
  const GradCheckReport report = run_grad_check(cfg, corrupt);
  std::cout << "max relative error grad_x: " << io::format_double(report.worst_rel_x)
            << " (tol " << io::format_double(kGradCheckTolX) << ")\n"
            << "max relative error grad_y directional: "
            << io::format_double(report.worst_rel_y) << " (tol "
            << io::format_double(kGradCheckTolY) << ")\n";
  if (!report.passed) {
    std::cerr << "gradient check failed for instance n = " << cfg.n << ", k = " << cfg.k
              << ", lambda = " << io::format_double(cfg.lambda)
              << ", u = " << io::format_double(cfg.u) << ", seed = " << cfg.seed << "\n";
    return kExitCheckFailure;
  }
  return kExitOk;
}

/// Clamp a Gr(1,2) point into the feasible ball by moving its angle to the
/// nearest arc endpoint.
inline GrassmannPoint clamp_to_ball_2d(const GrassmannPoint& y, const ProblemInstance& inst) {
  const double alpha_hat = detail::line_angle(inst.y_hat());
  double delta = detail::line_angle(y) - alpha_hat;
  while (delta > 0.5 * std::numbers::pi) delta -= std::numbers::pi;
  while (delta <= -0.5 * std::numbers::pi) delta += std::numbers::pi;
  const double arc = std::asin(std::min(inst.rho(), 1.0));
  if (std::abs(std::sin(delta)) <= inst.rho()) return y;
  const double clamped = alpha_hat + (delta > 0.0 ? arc : -arc);
  Matrix m(2, 1);
  m << std::cos(clamped), std::sin(clamped);
  return GrassmannPoint(StiefelRepresentative(std::move(m)));
}

/// `oracle` command: brute-force reference vs the solver, plus the sampling
/// probe, written as a flat key-value comparison table. Exits with
/// kExitCheckFailure when the value gap exceeds kOracleGapTol.
inline int cmd_oracle(const RunConfig& cfg) {
  if (cfg.n != 2 || cfg.k != 1) {
    throw UnsupportedInstanceError("oracle: only n = 2, k = 1 instances are supported");
  }
  const ProblemInstance inst = make_instance(cfg);
  const SolveResult result = solve(inst, make_penalty(cfg), make_solver_config(cfg));

  const GridSpec grid;
  const MinimaxResult oracle = minimax_2d(inst, grid);

  // Comparison happens on the constrained cost, with y clamped feasible.
  const GrassmannPoint y_feasible = clamp_to_ball_2d(result.final_point.y, inst);
  const ObjectivePoint solver_point{result.final_point.x, y_feasible};
  const double solver_value = cost(solver_point, inst);
  const double gap = solver_value - oracle.value;

  Matrix oracle_line(2, 1);
  oracle_line << std::cos(oracle.phi_star), std::sin(oracle.phi_star);
  const double y_gap =
      chordal_distance(y_feasible, GrassmannPoint(StiefelRepresentative(oracle_line)));

  const ProbeConfig probe;
  const ProbeReport probe_report = local_minimax_probe(solver_point, inst, probe, cfg.seed);

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  io::write_key_values(
      fs::path(cfg.output_dir) / "oracle_comparison.txt",
      {
          {"oracle_value", io::format_double(oracle.value)},
          {"oracle_phi", io::format_double(oracle.phi_star)},
          {"oracle_x", io::format_double(oracle.x_star(0)) + ", " +
                           io::format_double(oracle.x_star(1))},
          {"solver_value", io::format_double(solver_value)},
          {"solver_phi", io::format_double(detail::line_angle(y_feasible))},
          {"gap", io::format_double(gap)},
          {"y_chordal_gap", io::format_double(y_gap)},
          {"probe_a_samples", std::to_string(probe_report.a_samples)},
          {"probe_a_violations", std::to_string(probe_report.a_violations)},
          {"probe_worst_a_margin", io::format_double(probe_report.worst_a_margin)},
          {"probe_b_samples", std::to_string(probe_report.b_samples)},
          {"probe_b_violations", std::to_string(probe_report.b_violations)},
          {"probe_worst_b_margin", io::format_double(probe_report.worst_b_margin)},
      });

  std::cout << "oracle value:  " << io::format_double(oracle.value) << "\n"
            << "solver value:  " << io::format_double(solver_value) << "\n"
            << "gap:           " << io::format_double(gap) << "\n"
            << "probe (a/b) violations: " << probe_report.a_violations << "/"
            << probe_report.b_violations << "\n";
  if (std::abs(gap) > kOracleGapTol) {
    std::cerr << "oracle gap " << io::format_double(std::abs(gap)) << " exceeds tolerance "
              << io::format_double(kOracleGapTol) << "\n";
    return kExitCheckFailure;
  }
  return kExitOk;
}

}  // namespace grls

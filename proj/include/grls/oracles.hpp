#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "grls/errors.hpp"
#include "grls/grassmann.hpp"
#include "grls/objective.hpp"
#include "grls/solver.hpp"

namespace grls {

/// Resolution of the brute-force reference search for n = 2, k = 1.
struct GridSpec {
  long angle_count = 4001;      ///< samples of the Gr(1,2) angle parameter
  double x_box_halfwidth = 2.0; ///< outer search box [-w, w]^2
  double x_resolution = 0.01;   ///< outer grid spacing (one 10x refinement pass follows)

  void validate() const {
    if (angle_count < 3) throw Error("GridSpec: angle_count must be >= 3");
    if (!(x_resolution > 0.0 && x_resolution < x_box_halfwidth)) {
      throw Error("GridSpec: need 0 < x_resolution < x_box_halfwidth");
    }
  }
};

/// Sampling radii for the local-minimax probe.
struct ProbeConfig {
  double delta = 0.05;      ///< neighborhood radius around (x*, y*)
  long sample_count = 500;  ///< samples per check
  double h_delta = 0.05;    ///< radius of the inner re-maximization in check (b)

  void validate() const {
    if (!(delta > 0.0) || !(h_delta > 0.0)) {
      throw Error("ProbeConfig: delta and h_delta must be positive");
    }
    if (sample_count < 1) throw Error("ProbeConfig: sample_count must be positive");
  }
};

/// Absolute tolerance on objective comparisons in the probe; separates
/// genuine violations from roundoff at O(1) value scale.
inline constexpr double kProbeTol = 1e-8;

/// Central finite differences of the penalized objective in x.
inline Vector fd_grad_x(const ObjectivePoint& p, const ProblemInstance& inst,
                        const PenaltyParams& params, double h) {
  if (!(h > 0.0)) throw Error("fd_grad_x: h must be positive");
  Vector g(p.x.size());
  ObjectivePoint q = p;
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    q.x = p.x;
    q.x(i) = p.x(i) + h;
    const double plus = penalized_value(q, inst, params);
    q.x(i) = p.x(i) - h;
    const double minus = penalized_value(q, inst, params);
    g(i) = (plus - minus) / (2.0 * h);
  }
  return g;
}

/// Central finite difference of the penalized objective along the geodesic
/// ray t -> exp_map(Y, t H).
inline double fd_dirderiv_y(const ObjectivePoint& p, const HorizontalTangent& h_dir,
                            const ProblemInstance& inst, const PenaltyParams& params,
                            double h) {
  if (!(h > 0.0)) throw Error("fd_dirderiv_y: h must be positive");
  const ObjectivePoint plus{p.x, exp_map(p.y.rep(), h_dir.scaled(h))};
  const ObjectivePoint minus{p.x, exp_map(p.y.rep(), h_dir.scaled(-h))};
  return (penalized_value(plus, inst, params) - penalized_value(minus, inst, params)) /
         (2.0 * h);
}

namespace detail {

/// Angle of a 1-dimensional subspace of R^2, normalized into (-pi/2, pi/2].
inline double line_angle(const GrassmannPoint& y) {
  double a = std::atan2(y.rep().matrix()(1, 0), y.rep().matrix()(0, 0));
  if (a > 0.5 * std::numbers::pi) a -= std::numbers::pi;
  if (a <= -0.5 * std::numbers::pi) a += std::numbers::pi;
  return a;
}

inline void require_2d(const ProblemInstance& inst, const char* where) {
  if (inst.n() != 2 || inst.k() != 1) {
    throw UnsupportedInstanceError(std::string(where) + ": only n = 2, k = 1 is supported");
  }
}

/// cos/sin table over the feasible arc of line angles around the nominal
/// subspace, |sin(phi - alpha_hat)| <= rho.
struct AngleTable {
  std::vector<double> phi, c, s;
};

inline AngleTable feasible_arc_table(const ProblemInstance& inst, long angle_count) {
  const double alpha_hat = line_angle(inst.y_hat());
  const double halfwidth = std::asin(std::min(inst.rho(), 1.0));
  if (!(halfwidth > 0.0)) throw InfeasibleError("feasible arc is empty");
  AngleTable t;
  t.phi.resize(angle_count);
  t.c.resize(angle_count);
  t.s.resize(angle_count);
  for (long i = 0; i < angle_count; ++i) {
    const double phi =
        alpha_hat - halfwidth + 2.0 * halfwidth * static_cast<double>(i) /
                                    static_cast<double>(angle_count - 1);
    t.phi[i] = phi;
    t.c[i] = std::cos(phi);
    t.s[i] = std::sin(phi);
  }
  return t;
}

/// ||P_phi x - b||^2 for the line at the table entry i.
inline double line_cost(const AngleTable& t, std::size_t i, double x0, double x1,
                        double b0, double b1) {
  const double proj = t.c[i] * x0 + t.s[i] * x1;
  const double e0 = proj * t.c[i] - b0;
  const double e1 = proj * t.s[i] - b1;
  return e0 * e0 + e1 * e1;
}

inline std::pair<double, double> inner_max_on_table(const AngleTable& t, double x0,
                                                    double x1, double b0, double b1) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < t.phi.size(); ++i) {
    const double v = line_cost(t, i, x0, x1, b0, b1);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  return {t.phi[best_i], best};
}

}  // namespace detail

struct InnerMaxResult {
  double phi_star = 0.0;
  double value = 0.0;
};

/// Exhaustive inner maximization of ||P_phi x - b||^2 over the feasible arc
/// at angle_count uniform samples; accuracy O(arc / angle_count).
inline InnerMaxResult inner_max_2d(const Vector& x, const ProblemInstance& inst,
                                   const GridSpec& grid) {
  detail::require_2d(inst, "inner_max_2d");
  grid.validate();
  if (x.size() != 2) throw DimensionError("inner_max_2d: x must have length 2");
  const detail::AngleTable t = detail::feasible_arc_table(inst, grid.angle_count);
  const auto [phi, value] = detail::inner_max_on_table(t, x(0), x(1), inst.b()(0), inst.b()(1));
  return InnerMaxResult{phi, value};
}

struct MinimaxResult {
  Vector x_star;
  double phi_star = 0.0;
  double value = 0.0;
};

/// Brute-force minimax reference: an outer grid over x in [-w, w]^2 with the
/// exhaustive inner maximization per point, then one refinement pass at 10x
/// resolution around the incumbent.
inline MinimaxResult minimax_2d(const ProblemInstance& inst, const GridSpec& grid) {
  detail::require_2d(inst, "minimax_2d");
  grid.validate();
  const detail::AngleTable t = detail::feasible_arc_table(inst, grid.angle_count);
  const double b0 = inst.b()(0);
  const double b1 = inst.b()(1);

  double best_value = std::numeric_limits<double>::infinity();
  double best_x0 = 0.0, best_x1 = 0.0, best_phi = 0.0;
  auto scan = [&](double lo0, double hi0, double lo1, double hi1, double step) {
    const long m0 = std::lround((hi0 - lo0) / step);
    const long m1 = std::lround((hi1 - lo1) / step);
    for (long i = 0; i <= m0; ++i) {
      const double x0 = lo0 + static_cast<double>(i) * step;
      for (long j = 0; j <= m1; ++j) {
        const double x1 = lo1 + static_cast<double>(j) * step;
        const auto [phi, v] = detail::inner_max_on_table(t, x0, x1, b0, b1);
        if (v < best_value) {
          best_value = v;
          best_x0 = x0;
          best_x1 = x1;
          best_phi = phi;
        }
      }
    }
  };

  const double w = grid.x_box_halfwidth;
  scan(-w, w, -w, w, grid.x_resolution);
  scan(best_x0 - grid.x_resolution, best_x0 + grid.x_resolution,
       best_x1 - grid.x_resolution, best_x1 + grid.x_resolution, grid.x_resolution / 10.0);

  MinimaxResult out;
  out.x_star = Vector(2);
  out.x_star << best_x0, best_x1;
  out.phi_star = best_phi;
  out.value = best_value;
  return out;
}

/// Outcome of the local-minimax sampling probe. Check (a) asks whether y*
/// locally maximizes f(x*, .) on the ball; check (b) whether f(x*, y*) stays
/// below the local re-maximization over y for x near x*. Margins are the
/// largest observed excess (positive = violation beyond kProbeTol).
struct ProbeReport {
  long a_samples = 0;
  long a_violations = 0;
  double worst_a_margin = -std::numeric_limits<double>::infinity();
  long b_samples = 0;
  long b_violations = 0;
  double worst_b_margin = -std::numeric_limits<double>::infinity();
};

/// Sampling probe of the local-minimax conditions at p_star, on the
/// constrained objective (cost with y restricted to the ball). Report-only:
/// evidence, not proof.
inline ProbeReport local_minimax_probe(const ObjectivePoint& p_star,
                                       const ProblemInstance& inst, const ProbeConfig& probe,
                                       std::uint64_t seed = 0) {
  detail::require_2d(inst, "local_minimax_probe");
  probe.validate();
  const double alpha_hat = detail::line_angle(inst.y_hat());
  const double alpha_star = detail::line_angle(p_star.y);
  const double b0 = inst.b()(0);
  const double b1 = inst.b()(1);
  const double f_star = cost(p_star, inst);
  const auto feasible = [&](double phi) {
    return std::abs(std::sin(phi - alpha_hat)) <= inst.rho();
  };
  const auto line_cost_at = [&](double phi, double x0, double x1) {
    const double c = std::cos(phi), s = std::sin(phi);
    const double proj = c * x0 + s * x1;
    const double e0 = proj * c - b0, e1 = proj * s - b1;
    return e0 * e0 + e1 * e1;
  };

  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProbeReport report;

  // (a) f(x*, y) <= f(x*, y*) + tol for feasible y with d(y, y*) <= delta.
  // A tangent step of |t| <= delta gives chordal distance |sin t| <= delta.
  for (long i = 0; i < probe.sample_count; ++i) {
    const double t = (2.0 * unit(engine) - 1.0) * probe.delta;
    const double phi = alpha_star + t;
    if (!feasible(phi)) continue;
    ++report.a_samples;
    const double margin = line_cost_at(phi, p_star.x(0), p_star.x(1)) - f_star;
    report.worst_a_margin = std::max(report.worst_a_margin, margin);
    if (margin > kProbeTol) ++report.a_violations;
  }

  // (b) f(x*, y*) <= max over feasible y' with d(y', y*) <= h_delta of
  // f(x, y') + tol, for x with ||x - x*|| <= delta; inner max on a dense grid.
  const double window = std::asin(std::min(probe.h_delta, 1.0));
  constexpr long kInnerGrid = 2001;
  for (long i = 0; i < probe.sample_count; ++i) {
    const double angle = 2.0 * std::numbers::pi * unit(engine);
    const double radius = probe.delta * std::sqrt(unit(engine));
    const double x0 = p_star.x(0) + radius * std::cos(angle);
    const double x1 = p_star.x(1) + radius * std::sin(angle);
    ++report.b_samples;
    double inner = -std::numeric_limits<double>::infinity();
    for (long j = 0; j < kInnerGrid; ++j) {
      const double phi = alpha_star - window + 2.0 * window * static_cast<double>(j) /
                                                   static_cast<double>(kInnerGrid - 1);
      if (!feasible(phi)) continue;
      inner = std::max(inner, line_cost_at(phi, x0, x1));
    }
    const double margin = f_star - inner;  // +inf inner window empty => violation
    report.worst_b_margin = std::max(report.worst_b_margin, margin);
    if (margin > kProbeTol) ++report.b_violations;
  }
  return report;
}

/// One row of the penalty-exactness sweep.
struct SweepRow {
  double lambda = 0.0;
  bool diverged = false;
  bool converged = false;
  long iters_run = 0;
  double final_distance = 0.0;
  double violation = 0.0;  ///< max{0, d(y*, y_hat) - rho}
};

/// Runs solve() once per penalty weight and records the final constraint
/// violation. Divergence is recorded per row, not fatal.
inline std::vector<SweepRow> penalty_exactness_sweep(const ProblemInstance& inst,
                                                     const SolverConfig& config, double u,
                                                     const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw Error("penalty_exactness_sweep: lambda list is empty");
  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size());
  for (const double lambda : lambdas) {
    SweepRow row;
    row.lambda = lambda;
    try {
      const SolveResult result = solve(inst, PenaltyParams(lambda, u), config);
      row.converged = result.converged;
      row.iters_run = result.iters_run;
      row.final_distance = chordal_distance(result.final_point.y, inst.y_hat());
      row.violation = std::max(0.0, row.final_distance - inst.rho());
    } catch (const DivergenceError& e) {
      row.diverged = true;
      row.iters_run = e.iteration();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace grls

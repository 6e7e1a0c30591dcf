#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "grls/errors.hpp"
#include "grls/grassmann.hpp"
#include "grls/objective.hpp"

namespace grls {

/// Configuration of the timescale-separated gradient descent ascent run.
struct SolverConfig {
  double eta_x = 0.01;        ///< descent step size in x
  double eta_y = 0.1;         ///< ascent step size in y
  long max_iters = 50000;     ///< iteration cap
  double grad_tol = 1e-6;     ///< stop once the combined gradient norm drops below this
  std::uint64_t seed = 0;     ///< seed for the random initial point
  long record_every = 1;      ///< trace decimation

  void validate() const {
    // eta_y = 0 is allowed: it freezes the ascent player, which the tests use.
    if (!(eta_x > 0.0) || !(eta_y >= 0.0)) {
      throw Error("SolverConfig: eta_x must be positive and eta_y nonnegative");
    }
    if (max_iters < 1) throw Error("SolverConfig: max_iters must be positive");
    if (!(grad_tol > 0.0)) throw Error("SolverConfig: grad_tol must be positive");
    if (record_every < 1) throw Error("SolverConfig: record_every must be >= 1");
  }
};

struct SolverState {
  long iter = 0;
  ObjectivePoint point;
  double grad_x_norm = 0.0;
  double grad_y_norm = 0.0;
};

/// One recorded iterate: iteration index, combined gradient norm, the
/// projected point P_{y_k} x_k, and the distance d(y_k, y_hat).
struct TraceEntry {
  long iter = 0;
  double grad_norm = 0.0;
  Vector projected;
  double dist_to_center = 0.0;
};

struct SolveResult {
  ObjectivePoint final_point;
  bool converged = false;
  long iters_run = 0;
  std::vector<TraceEntry> trace;
};

/// Thrown when an iterate or gradient stops being finite. Carries the
/// iteration index; when raised from solve(), also the trace recorded so far.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& message, long iteration,
                  std::vector<TraceEntry> partial_trace = {})
      : Error(message + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration),
        partial_trace_(std::move(partial_trace)) {}

  [[nodiscard]] long iteration() const { return iteration_; }
  [[nodiscard]] const std::vector<TraceEntry>& partial_trace() const { return partial_trace_; }

 private:
  long iteration_;
  std::vector<TraceEntry> partial_trace_;
};

struct Stationarity {
  double grad_x_norm = 0.0;
  double grad_y_norm = 0.0;
  double combined = 0.0;
};

/// First-order stationarity measure of the penalized objective:
/// combined = sqrt(||grad_x||^2 + ||grad_y||_F^2). This is the quantity the
/// solver traces and tests against grad_tol.
inline Stationarity stationarity(const ObjectivePoint& p, const ProblemInstance& inst,
                                 const PenaltyParams& params) {
  const detail::RawGrads g = detail::penalized_grads_raw(p, inst, params);
  Stationarity s;
  s.grad_x_norm = g.grad_x.norm();
  s.grad_y_norm = g.grad_y.norm();
  s.combined = std::sqrt(s.grad_x_norm * s.grad_x_norm + s.grad_y_norm * s.grad_y_norm);
  return s;
}

namespace detail {

/// Simultaneous update: both gradients are evaluated at the old point.
inline ObjectivePoint apply_update(const ObjectivePoint& p, const RawGrads& g,
                                   const SolverConfig& config) {
  Vector x_next = p.x - config.eta_x * g.grad_x;
  GrassmannPoint y_next(StiefelRepresentative(
      geodesic_endpoint(p.y.rep().matrix(), config.eta_y * g.grad_y)));
  return ObjectivePoint{std::move(x_next), std::move(y_next)};
}

inline bool grads_finite(const RawGrads& g) {
  return g.grad_x.allFinite() && g.grad_y.allFinite();
}

}  // namespace detail

/// Default random initialization: x0 with independent standard normal
/// entries, y0 uniform on Gr(k,n); one generator seeded with `seed` drives
/// both draws.
inline ObjectivePoint random_init(const ProblemInstance& inst, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Matrix x0(inst.n(), 1);
  grls::detail::fill_standard_normal(x0, engine);
  Matrix y0(inst.n(), inst.k());
  grls::detail::fill_standard_normal(y0, engine);
  return ObjectivePoint{x0.col(0), GrassmannPoint(orthonormalize(y0))};
}

/// One simultaneous descent/ascent step: x moves by -eta_x * grad_x (the
/// exponential map on R^n is vector addition), y by the Grassmannian
/// exponential of +eta_y * grad_y. Gradient norms in the returned state are
/// refreshed at the new point.
inline SolverState step(const SolverState& state, const ProblemInstance& inst,
                        const PenaltyParams& params, const SolverConfig& config) {
  config.validate();
  const detail::RawGrads g = detail::penalized_grads_raw(state.point, inst, params);
  if (!detail::grads_finite(g)) {
    throw DivergenceError("step: non-finite gradient", state.iter);
  }
  ObjectivePoint next = detail::apply_update(state.point, g, config);
  if (!next.x.allFinite()) {
    throw DivergenceError("step: non-finite iterate", state.iter);
  }
  const detail::RawGrads g_next = detail::penalized_grads_raw(next, inst, params);
  return SolverState{state.iter + 1, std::move(next), g_next.grad_x.norm(),
                     g_next.grad_y.norm()};
}

/// Run the iteration until the combined gradient norm drops below
/// config.grad_tol or max_iters updates have been applied. Deterministic
/// given (seed, config, instance) or an explicit initial point. The trace
/// records every record_every-th iterate plus the final one.
inline SolveResult solve(const ProblemInstance& inst, const PenaltyParams& params,
                         const SolverConfig& config,
                         const std::optional<ObjectivePoint>& init = std::nullopt) {
  config.validate();
  ObjectivePoint p = init.has_value() ? *init : random_init(inst, config.seed);
  grls::detail::check_point(p, inst);

  std::vector<TraceEntry> trace;
  for (long iter = 0;; ++iter) {
    const detail::RawGrads g = detail::penalized_grads_raw(p, inst, params);
    const double gx = g.grad_x.norm();
    const double gy = g.grad_y.norm();
    const double combined = std::sqrt(gx * gx + gy * gy);
    if (!std::isfinite(combined) || !p.x.allFinite()) {
      throw DivergenceError("solve: non-finite iterate or gradient", iter, std::move(trace));
    }
    const bool terminal = combined <= config.grad_tol || iter >= config.max_iters;
    if (iter % config.record_every == 0 || terminal) {
      const Matrix& y = p.y.rep().matrix();
      trace.push_back(TraceEntry{iter, combined, y * (y.transpose() * p.x),
                                 chordal_distance(p.y, inst.y_hat())});
    }
    if (terminal) {
      return SolveResult{std::move(p), combined <= config.grad_tol, iter, std::move(trace)};
    }
    p = detail::apply_update(p, g, config);
  }
}

}  // namespace grls

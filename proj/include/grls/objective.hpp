#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>

#include "grls/errors.hpp"
#include "grls/grassmann.hpp"

namespace grls {

/// Overflow-safe softplus: log(1 + exp(z)) = max(z, 0) + log1p(exp(-|z|)).
/// The naive form overflows once z exceeds ~700, which is routine for the
/// smoothing scales used here.
inline double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

/// Logistic function 1 / (1 + exp(-z)), the derivative of softplus.
inline double logistic(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// One robust least squares instance: observations b, nominal subspace
/// y_hat, and the chordal-ball radius rho.
class ProblemInstance {
 public:
  ProblemInstance(Vector b, GrassmannPoint y_hat, double rho)
      : b_(std::move(b)), y_hat_(std::move(y_hat)), rho_(rho) {
    if (b_.size() != y_hat_.n()) {
      throw DimensionError("ProblemInstance: b must have length n");
    }
    // 0 < rho < sqrt(k), otherwise the ball is empty or all of Gr(k,n).
    if (!(rho_ > 0.0 && rho_ < std::sqrt(static_cast<double>(y_hat_.k())))) {
      throw Error("ProblemInstance: rho must satisfy 0 < rho < sqrt(k)");
    }
  }

  [[nodiscard]] const Vector& b() const { return b_; }
  [[nodiscard]] const GrassmannPoint& y_hat() const { return y_hat_; }
  [[nodiscard]] double rho() const { return rho_; }
  [[nodiscard]] int n() const { return y_hat_.n(); }
  [[nodiscard]] int k() const { return y_hat_.k(); }

 private:
  Vector b_;
  GrassmannPoint y_hat_;
  double rho_;
};

/// Penalty weight lambda >= 0 and smoothing parameter u > 0.
struct PenaltyParams {
  double lambda = 0.0;
  double u = 0.01;

  PenaltyParams(double lambda_, double u_) : lambda(lambda_), u(u_) {
    if (!(u > 0.0)) throw Error("PenaltyParams: u must be positive");
    if (!(lambda >= 0.0)) throw Error("PenaltyParams: lambda must be nonnegative");
  }
};

/// A point of the product space R^n x Gr(k,n).
struct ObjectivePoint {
  Vector x;
  GrassmannPoint y;
};

namespace detail {

inline void check_point(const ObjectivePoint& p, const ProblemInstance& inst) {
  if (p.x.size() != inst.n() || p.y.n() != inst.n() || p.y.k() != inst.k()) {
    throw DimensionError("objective: point dimensions do not match instance");
  }
}

/// Gradients as plain matrices, without the horizontality-validating wrapper.
/// The solver iterates on these so that non-finite values surface as a
/// divergence diagnostic instead of an invariant failure.
struct RawGrads {
  Vector grad_x;
  Matrix grad_y;
};

inline RawGrads penalized_grads_raw(const ObjectivePoint& p, const ProblemInstance& inst,
                                    const PenaltyParams& params) {
  check_point(p, inst);
  const Matrix& y = p.y.rep().matrix();
  const Vector r = y * (y.transpose() * p.x) - inst.b();
  Vector gx = 2.0 * (y * (y.transpose() * r));
  const Matrix g_cost = 2.0 * (r * (p.x.transpose() * y) + p.x * (r.transpose() * y));
  Matrix gy = g_cost - y * (y.transpose() * g_cost);
  if (params.lambda != 0.0) {
    const double k = static_cast<double>(inst.k());
    const Matrix& y_hat = inst.y_hat().rep().matrix();
    const double d2 = std::clamp(k - (y_hat.transpose() * y).squaredNorm(), 0.0, k);
    const double factor =
        params.lambda * logistic((d2 - inst.rho() * inst.rho()) / params.u);
    const Matrix g_dist = -2.0 * (y_hat * (y_hat.transpose() * y));
    gy -= factor * (g_dist - y * (y.transpose() * g_dist));
  }
  return RawGrads{std::move(gx), std::move(gy)};
}

}  // namespace detail

/// Cost ||P_y x - b||^2, computed as ||Y (Y^T x) - b||^2 without forming P.
inline double cost(const ObjectivePoint& p, const ProblemInstance& inst) {
  detail::check_point(p, inst);
  const Matrix& y = p.y.rep().matrix();
  return (y * (y.transpose() * p.x) - inst.b()).squaredNorm();
}

/// Euclidean gradient of the cost in x: 2 P_y (P_y x - b).
inline Vector grad_x_cost(const ObjectivePoint& p, const ProblemInstance& inst) {
  detail::check_point(p, inst);
  const Matrix& y = p.y.rep().matrix();
  const Vector r = y * (y.transpose() * p.x) - inst.b();
  return 2.0 * (y * (y.transpose() * r));
}

/// Riemannian gradient of the cost in y: the horizontal projection of the
/// Euclidean gradient 2 (r x^T + x r^T) Y, with r = Y (Y^T x) - b.
inline HorizontalTangent rgrad_y_cost(const ObjectivePoint& p, const ProblemInstance& inst) {
  detail::check_point(p, inst);
  const Matrix& y = p.y.rep().matrix();
  const Vector r = y * (y.transpose() * p.x) - inst.b();
  const Matrix g = 2.0 * (r * (p.x.transpose() * y) + p.x * (r.transpose() * y));
  return tangent_project(p.y.rep(), g);
}

/// Squared chordal distance to the nominal subspace, d(y, y_hat)^2, computed
/// as k - ||Yhat^T Y||_F^2 (O(n k^2), algebraically equal to the squared
/// projector form). Result clamped into [0, k].
inline double squared_center_distance(const GrassmannPoint& y, const ProblemInstance& inst) {
  if (y.n() != inst.n() || y.k() != inst.k()) {
    throw DimensionError("squared_center_distance: dimensions do not match instance");
  }
  const double k = static_cast<double>(inst.k());
  const double d2 =
      k - (inst.y_hat().rep().matrix().transpose() * y.rep().matrix()).squaredNorm();
  return std::clamp(d2, 0.0, k);
}

/// Riemannian gradient of d(y, y_hat)^2 in y: horizontal projection of
/// -2 Yhat (Yhat^T Y).
inline HorizontalTangent rgrad_y_center_distance(const GrassmannPoint& y,
                                                 const ProblemInstance& inst) {
  if (y.n() != inst.n() || y.k() != inst.k()) {
    throw DimensionError("rgrad_y_center_distance: dimensions do not match instance");
  }
  const Matrix& y_hat = inst.y_hat().rep().matrix();
  const Matrix g = -2.0 * (y_hat * (y_hat.transpose() * y.rep().matrix()));
  return tangent_project(y.rep(), g);
}

/// Smoothed penalty lambda * u * softplus((t - rho^2) / u); a smooth upper
/// bound of the hinge within lambda * u * log 2, monotone nondecreasing in t.
inline double smoothed_penalty(double t, const PenaltyParams& params, double rho) {
  return params.lambda * params.u * softplus((t - rho * rho) / params.u);
}

/// Exact hinge lambda * max{0, t - rho^2}; kept for validating the smoothing
/// bound, never used in the optimized objective.
inline double hinge_penalty(double t, double lambda, double rho) {
  return lambda * std::max(0.0, t - rho * rho);
}

/// Value of the smoothed penalized objective: cost minus the smoothed
/// penalty on d(y, y_hat)^2.
inline double penalized_value(const ObjectivePoint& p, const ProblemInstance& inst,
                              const PenaltyParams& params) {
  detail::check_point(p, inst);
  return cost(p, inst) -
         smoothed_penalty(squared_center_distance(p.y, inst), params, inst.rho());
}

struct PenalizedGrads {
  Vector grad_x;
  HorizontalTangent grad_y;
};

/// Both partial gradients of the penalized objective. grad_x is unaffected
/// by the penalty; grad_y subtracts lambda * sigma((d^2 - rho^2)/u) times the
/// distance gradient, sigma being the logistic function.
inline PenalizedGrads penalized_grads(const ObjectivePoint& p, const ProblemInstance& inst,
                                      const PenaltyParams& params) {
  detail::RawGrads raw = detail::penalized_grads_raw(p, inst, params);
  return PenalizedGrads{std::move(raw.grad_x),
                        HorizontalTangent(p.y.rep(), std::move(raw.grad_y))};
}

/// Ordinary least squares min ||A z - b||^2 via SVD (minimum-residual);
/// rejects rank-deficient A.
inline Vector baseline_ls_solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size() || a.cols() < 1 || a.rows() < a.cols()) {
    throw DimensionError("baseline_ls_solve: need n x k system with k <= n");
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(a.cols() - 1) < kRankTol) {
    throw RankDeficiencyError("baseline_ls_solve: matrix is rank deficient");
  }
  return svd.solve(b);
}

}  // namespace grls

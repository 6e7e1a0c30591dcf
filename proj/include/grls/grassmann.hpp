#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

#include "grls/errors.hpp"

namespace grls {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Tolerance on ||Y^T Y - I||_F for a valid Stiefel representative.
inline constexpr double kOrthonormalityTol = 1e-10;
/// Tolerance on ||Y^T H||_F for a valid horizontal tangent.
inline constexpr double kHorizontalityTol = 1e-10;
/// Two subspaces are considered equal iff their chordal distance is below
/// this bound. This is the single documented equality constant; all
/// subspace-level comparisons go through it.
inline constexpr double kSubspaceEqualityTol = 1e-8;
/// Smallest singular value below which a matrix is treated as rank deficient.
inline constexpr double kRankTol = 1e-12;

namespace detail {

/// Thin QR factor with the sign of each R diagonal entry folded into Q, so
/// the result is a deterministic orthonormal basis of range(M).
inline Matrix thin_qr_orthonormal(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const Matrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

inline void fill_standard_normal(Matrix& m, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      m(i, j) = normal(engine);
    }
  }
}

}  // namespace detail

/// An n x k matrix with orthonormal columns (an element of St(k,n)).
/// Immutable after construction; construction validates the invariant
/// ||Y^T Y - I||_F <= kOrthonormalityTol.
class StiefelRepresentative {
 public:
  explicit StiefelRepresentative(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.size() == 0 || matrix_.cols() < 1 || matrix_.rows() < matrix_.cols()) {
      throw DimensionError("StiefelRepresentative: need an n x k matrix with 1 <= k <= n");
    }
    const double defect =
        (matrix_.transpose() * matrix_ - Matrix::Identity(k(), k())).norm();
    if (!(defect <= kOrthonormalityTol)) {
      throw Error("StiefelRepresentative: columns are not orthonormal (defect " +
                  std::to_string(defect) + ")");
    }
  }

  [[nodiscard]] const Matrix& matrix() const { return matrix_; }
  [[nodiscard]] int n() const { return static_cast<int>(matrix_.rows()); }
  [[nodiscard]] int k() const { return static_cast<int>(matrix_.cols()); }

 private:
  Matrix matrix_;
};

/// A k-dimensional subspace of R^n, stored via an (arbitrary) orthonormal
/// representative. Equality is representative-independent.
class GrassmannPoint {
 public:
  explicit GrassmannPoint(StiefelRepresentative rep) : rep_(std::move(rep)) {}

  [[nodiscard]] const StiefelRepresentative& rep() const { return rep_; }
  [[nodiscard]] int n() const { return rep_.n(); }
  [[nodiscard]] int k() const { return rep_.k(); }

 private:
  StiefelRepresentative rep_;
};

/// An element of the horizontal space at `base`: an n x k matrix H with
/// Y^T H = 0. Identified with a tangent vector of the Grassmannian.
class HorizontalTangent {
 public:
  HorizontalTangent(StiefelRepresentative base, Matrix matrix)
      : base_(std::move(base)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != base_.matrix().rows() || matrix_.cols() != base_.matrix().cols()) {
      throw DimensionError("HorizontalTangent: tangent shape must match base");
    }
    const double defect = (base_.matrix().transpose() * matrix_).norm();
    if (!(defect <= kHorizontalityTol)) {
      throw Error("HorizontalTangent: matrix is not horizontal (||Y^T H|| = " +
                  std::to_string(defect) + ")");
    }
  }

  [[nodiscard]] const StiefelRepresentative& base() const { return base_; }
  [[nodiscard]] const Matrix& matrix() const { return matrix_; }
  [[nodiscard]] double norm() const { return matrix_.norm(); }

  /// Same tangent scaled by `s` (still horizontal at the same base).
  [[nodiscard]] HorizontalTangent scaled(double s) const {
    return HorizontalTangent(base_, s * matrix_);
  }

 private:
  StiefelRepresentative base_;
  Matrix matrix_;
};

/// Principal angles between two k-dimensional subspaces, nondecreasing,
/// each in [0, pi/2].
struct PrincipalAngles {
  Vector angles;
};

/// Orthonormal basis of range(M) via thin QR; rejects rank-deficient input
/// (smallest singular value below kRankTol).
inline StiefelRepresentative orthonormalize(const Matrix& m) {
  if (m.size() == 0 || m.cols() < 1 || m.rows() < m.cols()) {
    throw DimensionError("orthonormalize: need an n x k matrix with 1 <= k <= n");
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  if (svd.singularValues()(m.cols() - 1) < kRankTol) {
    throw RankDeficiencyError("orthonormalize: matrix is rank deficient (sigma_min = " +
                              std::to_string(svd.singularValues()(m.cols() - 1)) + ")");
  }
  return StiefelRepresentative(detail::thin_qr_orthonormal(m));
}

/// Convenience: the subspace spanned by the columns of M.
inline GrassmannPoint span_of(const Matrix& m) { return GrassmannPoint(orthonormalize(m)); }

/// Orthogonal projection of an ambient matrix G onto the horizontal space at
/// Y: H = (I - Y Y^T) G. Idempotent and self-adjoint w.r.t. trace(Z1^T Z2).
inline HorizontalTangent tangent_project(const StiefelRepresentative& y, const Matrix& g) {
  if (g.rows() != y.matrix().rows() || g.cols() != y.matrix().cols()) {
    throw DimensionError("tangent_project: gradient shape must match representative");
  }
  Matrix h = g - y.matrix() * (y.matrix().transpose() * g);
  return HorizontalTangent(y, std::move(h));
}

namespace detail {

/// Geodesic endpoint as a raw matrix: with the thin SVD H = U diag(s) V^T the
/// endpoint is spanned by Y V cos(s) V^T + U sin(s) V^T, re-orthonormalized.
inline Matrix geodesic_endpoint(const Matrix& y, const Matrix& h) {
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector s = svd.singularValues();
  const Matrix endpoint =
      y * svd.matrixV() * s.array().cos().matrix().asDiagonal() * svd.matrixV().transpose() +
      svd.matrixU() * s.array().sin().matrix().asDiagonal() * svd.matrixV().transpose();
  return thin_qr_orthonormal(endpoint);
}

}  // namespace detail

/// Endpoint of the unit-time Grassmannian geodesic from span(Y) with initial
/// velocity H. The result is re-orthonormalized to stop roundoff drift from
/// accumulating across iterations.
inline GrassmannPoint exp_map(const StiefelRepresentative& y, const HorizontalTangent& h) {
  if ((h.base().matrix() - y.matrix()).lpNorm<Eigen::Infinity>() > 1e-12) {
    throw DimensionError("exp_map: tangent is not based at the given representative");
  }
  return GrassmannPoint(
      StiefelRepresentative(detail::geodesic_endpoint(y.matrix(), h.matrix())));
}

/// Principal angles theta_i = arccos(sigma_i(Y1^T Y2)), with the singular
/// values clamped to [0, 1] first (roundoff can push them above 1).
inline PrincipalAngles principal_angles(const GrassmannPoint& y1, const GrassmannPoint& y2) {
  if (y1.n() != y2.n() || y1.k() != y2.k()) {
    throw DimensionError("principal_angles: subspaces must share (n, k)");
  }
  Eigen::JacobiSVD<Matrix> svd(y1.rep().matrix().transpose() * y2.rep().matrix());
  Vector angles = svd.singularValues();
  for (Eigen::Index i = 0; i < angles.size(); ++i) {
    angles(i) = std::acos(std::clamp(angles(i), 0.0, 1.0));
  }
  std::sort(angles.data(), angles.data() + angles.size());
  return PrincipalAngles{std::move(angles)};
}

/// Chordal distance (sum_i sin^2 theta_i)^(1/2), evaluated through the
/// projector form (1/sqrt(2)) ||Y1 Y1^T - Y2 Y2^T||_F, which stays accurate
/// for nearly identical subspaces. Representative-independent; bounded by
/// sqrt(k).
inline double chordal_distance(const GrassmannPoint& y1, const GrassmannPoint& y2) {
  if (y1.n() != y2.n() || y1.k() != y2.k()) {
    throw DimensionError("chordal_distance: subspaces must share (n, k)");
  }
  const Matrix& a = y1.rep().matrix();
  const Matrix& b = y2.rep().matrix();
  const Matrix diff = a * a.transpose() - b * b.transpose();
  return diff.norm() / std::numbers::sqrt2;
}

/// Representative-independent subspace equality at kSubspaceEqualityTol.
/// Subspaces of different shape are simply unequal.
inline bool same_subspace(const GrassmannPoint& y1, const GrassmannPoint& y2) {
  if (y1.n() != y2.n() || y1.k() != y2.k()) return false;
  return chordal_distance(y1, y2) <= kSubspaceEqualityTol;
}

inline bool operator==(const GrassmannPoint& y1, const GrassmannPoint& y2) {
  return same_subspace(y1, y2);
}

/// The n x n orthogonal projection matrix P = Y Y^T onto the subspace.
/// Kept for tests and plotting; the objective code never materializes P.
inline Matrix projection_matrix(const GrassmannPoint& y) {
  return y.rep().matrix() * y.rep().matrix().transpose();
}

/// Uniform (Haar) random subspace: orthonormalization of an n x k matrix of
/// independent standard normal entries. Deterministic given the seed.
inline GrassmannPoint random_point(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) throw DimensionError("random_point: need 1 <= k <= n");
  std::mt19937_64 engine(seed);
  Matrix m(n, k);
  detail::fill_standard_normal(m, engine);
  return GrassmannPoint(orthonormalize(m));
}

/// Random horizontal tangent at Y with Frobenius norm `scale` (the zero
/// tangent when scale is 0). Deterministic given the seed.
inline HorizontalTangent random_tangent(const StiefelRepresentative& y, std::uint64_t seed,
                                        double scale) {
  if (scale < 0.0) throw Error("random_tangent: scale must be nonnegative");
  std::mt19937_64 engine(seed);
  Matrix g(y.n(), y.k());
  detail::fill_standard_normal(g, engine);
  HorizontalTangent h = tangent_project(y, g);
  const double norm = h.norm();
  if (scale == 0.0 || norm < kRankTol) {
    return HorizontalTangent(y, Matrix::Zero(y.n(), y.k()));
  }
  return h.scaled(scale / norm);
}

}  // namespace grls

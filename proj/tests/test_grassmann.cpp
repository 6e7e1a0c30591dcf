#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "grls/grassmann.hpp"
#include "test_support.hpp"

using grls::GrassmannPoint;
using grls::HorizontalTangent;
using grls::Matrix;
using grls::StiefelRepresentative;
using grls::Vector;
using test_support::random_matrix;
using test_support::random_orthogonal;

namespace {
constexpr double kPi = std::numbers::pi;

GrassmannPoint line_at(double angle) {
  Matrix m(2, 1);
  m << std::cos(angle), std::sin(angle);
  return GrassmannPoint(StiefelRepresentative(std::move(m)));
}
}  // namespace

TEST_CASE("orthonormalize keeps the span and restores orthonormality") {
  SECTION("already orthonormal input") {
    Matrix m = Matrix::Identity(4, 2);
    const StiefelRepresentative y = grls::orthonormalize(m);
    REQUIRE((y.matrix().transpose() * y.matrix() - Matrix::Identity(2, 2)).norm() <= 1e-12);
    REQUIRE(grls::chordal_distance(GrassmannPoint(y), grls::span_of(m)) <= 1e-12);
  }

  SECTION("scaling invariance of the span") {
    Matrix m(2, 1);
    m << 2.0, 0.0;
    const StiefelRepresentative y = grls::orthonormalize(m);
    REQUIRE(std::abs(y.matrix().col(0).norm() - 1.0) <= 1e-14);
    REQUIRE(std::abs(std::abs(y.matrix()(0, 0)) - 1.0) <= 1e-14);
    REQUIRE(std::abs(y.matrix()(1, 0)) <= 1e-14);
  }

  SECTION("random full-rank input spans the same subspace as its SVD basis") {
    std::mt19937_64 engine(7);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix m = random_matrix(engine, 5, 2);
      const GrassmannPoint y(grls::orthonormalize(m));
      // Independent subspace basis through the SVD.
      Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
      const GrassmannPoint reference(StiefelRepresentative(svd.matrixU()));
      REQUIRE(grls::chordal_distance(y, reference) <= 1e-10);
    }
  }

  SECTION("rank-deficient input is rejected") {
    Matrix m(3, 2);
    m.col(0) << 1.0, 2.0, 3.0;
    m.col(1) = 2.0 * m.col(0);
    REQUIRE_THROWS_AS(grls::orthonormalize(m), grls::RankDeficiencyError);
  }
}

TEST_CASE("tangent_project extracts the horizontal component") {
  std::mt19937_64 engine(11);
  const StiefelRepresentative y = grls::orthonormalize(random_matrix(engine, 4, 2));

  SECTION("vertical directions are annihilated") {
    const Matrix a = random_matrix(engine, 2, 2);
    const HorizontalTangent h = grls::tangent_project(y, y.matrix() * a);
    REQUIRE(h.norm() <= 1e-12);
  }

  SECTION("horizontal input passes through unchanged") {
    const HorizontalTangent h = grls::tangent_project(y, random_matrix(engine, 4, 2));
    const HorizontalTangent twice = grls::tangent_project(y, h.matrix());
    REQUIRE((twice.matrix() - h.matrix()).norm() <= 1e-14);
  }

  SECTION("projection is orthogonal: the residual is vertical") {
    const Matrix g = random_matrix(engine, 4, 2);
    const HorizontalTangent h = grls::tangent_project(y, g);
    REQUIRE((y.matrix().transpose() * h.matrix()).norm() <= 1e-10);
    for (int trial = 0; trial < 5; ++trial) {
      const HorizontalTangent probe = grls::tangent_project(y, random_matrix(engine, 4, 2));
      const double inner = ((g - h.matrix()).array() * probe.matrix().array()).sum();
      REQUIRE(std::abs(inner) <= 1e-12);
    }
  }

  SECTION("self-adjoint with respect to the trace inner product") {
    const Matrix z1 = random_matrix(engine, 4, 2);
    const Matrix z2 = random_matrix(engine, 4, 2);
    const double lhs =
        (grls::tangent_project(y, z1).matrix().array() * z2.array()).sum();
    const double rhs =
        (z1.array() * grls::tangent_project(y, z2).matrix().array()).sum();
    REQUIRE(std::abs(lhs - rhs) <= 1e-12);
  }

  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(grls::tangent_project(y, Matrix::Zero(3, 2)), grls::DimensionError);
  }
}

TEST_CASE("exp_map follows Grassmannian geodesics") {
  std::mt19937_64 engine(13);

  SECTION("zero tangent stays put") {
    const StiefelRepresentative y = grls::orthonormalize(random_matrix(engine, 5, 2));
    const HorizontalTangent zero(y, Matrix::Zero(5, 2));
    REQUIRE(grls::chordal_distance(grls::exp_map(y, zero), GrassmannPoint(y)) <= 1e-12);
  }

  SECTION("great circle on Gr(1,2)") {
    Matrix m(2, 1);
    m << 1.0, 0.0;
    const StiefelRepresentative y((Matrix(m)));
    for (const double t : {0.3, 0.7, 1.2}) {
      Matrix h(2, 1);
      h << 0.0, t;
      const GrassmannPoint end = grls::exp_map(y, HorizontalTangent(y, h));
      REQUIRE(grls::chordal_distance(end, line_at(t)) <= 1e-12);
    }
  }

  SECTION("geodesic distance equals sqrt(sum sin^2 sigma_i)") {
    for (int trial = 0; trial < 10; ++trial) {
      const StiefelRepresentative y = grls::orthonormalize(random_matrix(engine, 6, 3));
      const double scale = 0.05 + 0.7 * static_cast<double>(trial) / 10.0;  // <= pi/4
      const HorizontalTangent h =
          grls::random_tangent(y, 100 + static_cast<std::uint64_t>(trial), scale);
      const GrassmannPoint end = grls::exp_map(y, h);

      Eigen::JacobiSVD<Matrix> svd(h.matrix());
      const double expected = std::sqrt(svd.singularValues().array().sin().square().sum());
      REQUIRE(std::abs(grls::chordal_distance(GrassmannPoint(y), end) - expected) <= 1e-10);

      // Cross-check through the principal-angle route.
      const grls::PrincipalAngles angles = grls::principal_angles(GrassmannPoint(y), end);
      const double via_angles = std::sqrt(angles.angles.array().sin().square().sum());
      REQUIRE(std::abs(via_angles - expected) <= 1e-7);
    }
  }

  SECTION("small-step consistency: d(Y, exp(Y, H)) ~ ||H||") {
    const StiefelRepresentative y = grls::orthonormalize(random_matrix(engine, 5, 2));
    const HorizontalTangent h = grls::random_tangent(y, 5, 1e-3);
    const double d = grls::chordal_distance(GrassmannPoint(y), grls::exp_map(y, h));
    REQUIRE(std::abs(d / 1e-3 - 1.0) <= 1e-4);
  }

  SECTION("tangent based elsewhere is rejected") {
    const StiefelRepresentative y1 = grls::orthonormalize(random_matrix(engine, 4, 2));
    const StiefelRepresentative y2 = grls::orthonormalize(random_matrix(engine, 4, 2));
    const HorizontalTangent h = grls::random_tangent(y1, 3, 0.5);
    REQUIRE_THROWS_AS(grls::exp_map(y2, h), grls::DimensionError);
  }
}

TEST_CASE("principal angles") {
  SECTION("identical subspaces have zero angles") {
    const GrassmannPoint y = grls::random_point(5, 2, 17);
    const grls::PrincipalAngles angles = grls::principal_angles(y, y);
    REQUIRE(angles.angles.size() == 2);
    REQUIRE(angles.angles.maxCoeff() <= 1e-6);
  }

  SECTION("orthogonal lines meet at pi/2") {
    const grls::PrincipalAngles angles = grls::principal_angles(line_at(0.0), line_at(kPi / 2));
    REQUIRE(std::abs(angles.angles(0) - kPi / 2) <= 1e-12);
  }

  SECTION("a single principal angle equals the angle between lines") {
    const grls::PrincipalAngles angles = grls::principal_angles(line_at(0.0), line_at(kPi / 8));
    REQUIRE(std::abs(angles.angles(0) - kPi / 8) <= 1e-7);
  }

  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(grls::principal_angles(grls::random_point(4, 2, 1),
                                             grls::random_point(4, 1, 1)),
                      grls::DimensionError);
  }
}

TEST_CASE("chordal distance") {
  SECTION("identical subspaces are at distance zero") {
    const GrassmannPoint y = grls::random_point(6, 3, 23);
    REQUIRE(grls::chordal_distance(y, y) <= 1e-14);
  }

  SECTION("orthogonal lines are at distance one") {
    REQUIRE(std::abs(grls::chordal_distance(line_at(0.0), line_at(kPi / 2)) - 1.0) <= 1e-12);
  }

  SECTION("line at pi/8 sits at distance sin(pi/8)") {
    const double d = grls::chordal_distance(line_at(0.0), line_at(kPi / 8));
    REQUIRE(std::abs(d - std::sin(kPi / 8)) <= 1e-12);
    REQUIRE(std::abs(d - 0.3826834323650898) <= 1e-12);
  }

  SECTION("agrees with the principal-angle form and stays below sqrt(k)") {
    std::mt19937_64 engine(29);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 3 + static_cast<int>(engine() % 6);
      const int k = 1 + static_cast<int>(engine() % 3);
      if (k >= n) continue;
      const GrassmannPoint y1(grls::orthonormalize(random_matrix(engine, n, k)));
      const GrassmannPoint y2(grls::orthonormalize(random_matrix(engine, n, k)));
      const double d = grls::chordal_distance(y1, y2);
      const grls::PrincipalAngles angles = grls::principal_angles(y1, y2);
      const double via_angles = std::sqrt(angles.angles.array().sin().square().sum());
      REQUIRE(std::abs(d - via_angles) <= 1e-10);
      REQUIRE(d <= std::sqrt(static_cast<double>(k)) + 1e-12);
    }
  }
}

TEST_CASE("chordal distance satisfies the metric axioms") {
  std::mt19937_64 engine(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(engine() % 7);
    const int k = 1 + static_cast<int>(engine() % 3);
    if (k > n) continue;
    const GrassmannPoint a(grls::orthonormalize(random_matrix(engine, n, k)));
    const GrassmannPoint b(grls::orthonormalize(random_matrix(engine, n, k)));
    const GrassmannPoint c(grls::orthonormalize(random_matrix(engine, n, k)));
    const double dab = grls::chordal_distance(a, b);
    const double dba = grls::chordal_distance(b, a);
    const double dac = grls::chordal_distance(a, c);
    const double dbc = grls::chordal_distance(b, c);
    REQUIRE(dab >= 0.0);
    REQUIRE(std::abs(dab - dba) <= 1e-12);
    REQUIRE(dac <= dab + dbc + 1e-10);
    REQUIRE(grls::chordal_distance(a, a) <= 1e-14);
  }

  SECTION("identity of indiscernibles at the documented tolerance") {
    std::mt19937_64 rot(37);
    const GrassmannPoint y = grls::random_point(5, 2, 41);
    const Matrix q = random_orthogonal(rot, 2);
    const GrassmannPoint same(StiefelRepresentative(y.rep().matrix() * q));
    REQUIRE(grls::same_subspace(y, same));
    REQUIRE(y == same);
    const GrassmannPoint other = grls::random_point(5, 2, 43);
    REQUIRE(!grls::same_subspace(y, other));
  }
}

TEST_CASE("subspace-level outputs are representative independent") {
  std::mt19937_64 engine(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(engine() % 5);
    const int k = 1 + static_cast<int>(engine() % 2);
    const GrassmannPoint y1(grls::orthonormalize(random_matrix(engine, n, k)));
    const GrassmannPoint y2(grls::orthonormalize(random_matrix(engine, n, k)));
    const Matrix q = random_orthogonal(engine, k);
    const GrassmannPoint y1_rotated(StiefelRepresentative(y1.rep().matrix() * q));

    REQUIRE(std::abs(grls::chordal_distance(y1, y2) -
                     grls::chordal_distance(y1_rotated, y2)) <= 1e-10);
    REQUIRE((grls::projection_matrix(y1) - grls::projection_matrix(y1_rotated)).norm() <=
            1e-10);
    const Vector a1 = grls::principal_angles(y1, y2).angles;
    const Vector a2 = grls::principal_angles(y1_rotated, y2).angles;
    REQUIRE((a1 - a2).lpNorm<Eigen::Infinity>() <= 1e-7);
  }
}

TEST_CASE("projection matrix") {
  SECTION("span(e1) in the plane") {
    const Matrix p = grls::projection_matrix(line_at(0.0));
    Matrix expected(2, 2);
    expected << 1.0, 0.0, 0.0, 0.0;
    REQUIRE((p - expected).norm() <= 1e-14);
  }

  SECTION("the full space projects onto itself") {
    const GrassmannPoint y(StiefelRepresentative(Matrix::Identity(3, 3)));
    REQUIRE((grls::projection_matrix(y) - Matrix::Identity(3, 3)).norm() <= 1e-14);
  }

  SECTION("symmetric, idempotent, trace k") {
    const GrassmannPoint y = grls::random_point(5, 2, 53);
    const Matrix p = grls::projection_matrix(y);
    REQUIRE((p - p.transpose()).norm() <= 1e-12);
    REQUIRE((p * p - p).norm() <= 1e-10);
    REQUIRE(std::abs(p.trace() - 2.0) <= 1e-10);
  }
}

TEST_CASE("random points and tangents are deterministic") {
  SECTION("same seed, identical output") {
    const GrassmannPoint a = grls::random_point(4, 2, 59);
    const GrassmannPoint b = grls::random_point(4, 2, 59);
    REQUIRE(a.rep().matrix() == b.rep().matrix());
    const HorizontalTangent h1 = grls::random_tangent(a.rep(), 61, 0.37);
    const HorizontalTangent h2 = grls::random_tangent(a.rep(), 61, 0.37);
    REQUIRE(h1.matrix() == h2.matrix());
    REQUIRE(std::abs(h1.norm() - 0.37) <= 1e-12);
  }

  SECTION("zero scale gives the zero tangent") {
    const GrassmannPoint y = grls::random_point(4, 2, 67);
    REQUIRE(grls::random_tangent(y.rep(), 71, 0.0).norm() == 0.0);
  }

  SECTION("random points satisfy the Stiefel invariant") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const GrassmannPoint y = grls::random_point(4, 2, seed);
      REQUIRE((y.rep().matrix().transpose() * y.rep().matrix() - Matrix::Identity(2, 2))
                  .norm() <= 1e-10);
    }
  }
}

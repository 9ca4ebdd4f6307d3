#include "pfelast/fourier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace pfelast::fourier {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RealVector vec(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

ComplexVector cvec(std::initializer_list<double> values) { return vec(values).cast<std::complex<double>>(); }

TEST(ProjectorSymbol, HandExamples) {
  EXPECT_EQ(projector_symbol(vec({1, 0})), (RealMatrix(2, 2) << 1, 0, 0, 0).finished());
  EXPECT_LE((projector_symbol(vec({1, 1})) - RealMatrix::Constant(2, 2, 0.5)).norm(), 1e-16);
  EXPECT_THROW(projector_symbol(vec({0, 0})), std::invalid_argument);
}

TEST(ProjectorSymbol, IsIdempotentForRandomFrequencies) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    for (int dim : {2, 3}) {
      RealVector xi(dim);
      for (auto& x : xi) x = coord(rng);
      const RealMatrix P = projector_symbol(xi);
      EXPECT_LE((P * P - P).norm(), 1e-15);
    }
  }
}

TEST(ElasticitySymbol, HandExamples) {
  EXPECT_LE((elasticity_symbol(vec({1, 0}), 0.0) - 0.5 * vec({2, 1}).asDiagonal().toDenseMatrix()).norm(), 1e-16);
  EXPECT_LE((elasticity_symbol(vec({0, 2}), 1.0) - 2.0 * vec({1, 4}).asDiagonal().toDenseMatrix()).norm(), 1e-15);
}

TEST(ElasticitySymbol, EigenvaluesArePositive) {
  const RealVector xi = vec({1.5, -2.0, 0.5});
  for (double lambda : {0.0, 1.0, 1e4}) {
    const RealVector eig = Eigen::SelfAdjointEigenSolver<RealMatrix>(elasticity_symbol(xi, lambda)).eigenvalues();
    const double s = 0.5 * xi.squaredNorm();
    EXPECT_NEAR(eig[0], s, 1e-12 * s);
    EXPECT_NEAR(eig[1], s, 1e-12 * s);
    EXPECT_NEAR(eig[2], s * (2 * lambda + 2), 1e-12 * s * (2 * lambda + 2));
  }
}

TEST(ModeSolve, ElasticityHandExamples) {
  const RealVector xi = vec({kTwoPi, 0});
  for (double lambda : {0.0, 3.0, 1e6}) {
    const ComplexVector u = solve_mode_elasticity(xi, lambda, cvec({1, 0}));
    EXPECT_NEAR(u[0].real(), 1.0 / (kTwoPi * kTwoPi * (lambda + 1)), 1e-17);
    EXPECT_EQ(u[1], 0.0);
  }
  for (double lambda : {0.0, 5.0, 1e8}) {
    const ComplexVector u = solve_mode_elasticity(vec({1, 0}), lambda, cvec({0, 1}));
    EXPECT_NEAR(std::abs(u[1] - 2.0), 0.0, 1e-15);
    EXPECT_EQ(u[0], 0.0);
  }
  EXPECT_THROW(solve_mode_elasticity(vec({0, 0}), 1.0, cvec({1, 0})), std::invalid_argument);
}

TEST(ModeSolve, ElasticityInvertsTheSymbol) {
  const RealVector xi = vec({0.3, -4.0});
  const ComplexVector f = ComplexVector::Constant(2, {1.0, -2.0});
  const ComplexVector u = solve_mode_elasticity(xi, 7.0, f);
  EXPECT_LE((elasticity_symbol(xi, 7.0).cast<std::complex<double>>() * u - f).norm(), 1e-13);
}

TEST(ModeSolve, StokesHandExamples) {
  const auto mode = solve_mode_stokes(vec({kTwoPi, 0}), cvec({1, 0}));
  EXPECT_LE(mode.velocity.norm(), 1e-17);
  EXPECT_NEAR(std::abs(mode.pressure - 1.0 / kTwoPi), 0.0, 1e-16);

  const auto perpendicular = solve_mode_stokes(vec({3, 0}), cvec({0, 1}));
  EXPECT_LE((perpendicular.velocity - cvec({0, 2.0 / 9.0})).norm(), 1e-16);
  EXPECT_EQ(perpendicular.pressure, 0.0);
  EXPECT_LE(stokes_residual(vec({3, 0}), cvec({0, 1}), perpendicular), 1e-13);
  EXPECT_THROW(solve_mode_stokes(vec({0, 0, 0}), cvec({1, 0, 0})), std::invalid_argument);
}

TEST(ModeSolve, StokesVelocityIsIncompressible) {
  const RealVector xi = vec({1.0, 2.0, -0.5});
  const ComplexVector f = (ComplexVector(3) << std::complex<double>(1, 2), 3.0, std::complex<double>(0, -1)).finished();
  const auto mode = solve_mode_stokes(xi, f);
  EXPECT_LE(std::abs(xi.cast<std::complex<double>>().dot(mode.velocity)), 1e-15);
  EXPECT_LE(stokes_residual(xi, f, mode), 1e-13);
  EXPECT_EQ(stokes_symbol(xi).rows(), 4);
}

TEST(ConvexCombination, HandExamples) {
  EXPECT_EQ(verify_convex_combination(vec({1, 2}), 0.0, cvec({0.3, -1})), 0.0);
  EXPECT_LE(verify_convex_combination(vec({kTwoPi, 0}), 3.0, cvec({1, 0})), 1e-16);
}

TEST(ConvexCombination, ElasticityConvergesToStokesAtRateOneOverLambda) {
  const RealVector xi = vec({2.0, -1.0});
  const ComplexVector f = cvec({1.0, 0.5});
  const auto stokes = solve_mode_stokes(xi, f);
  for (double lambda : {1.0, 1e2, 1e4, 1e8}) {
    const double gap = (solve_mode_elasticity(xi, lambda, f) - stokes.velocity).norm();
    EXPECT_LE(gap, 2.0 / (lambda + 1) * f.norm() / xi.squaredNorm());
  }
}

TEST(InverseIdempotent, HandExamples) {
  EXPECT_EQ(verify_inverse_idempotent(0.0, vec({1, 3})), 0.0);
  EXPECT_EQ(verify_inverse_idempotent(1.0, vec({1, 0})), 0.0);
  EXPECT_THROW(verify_inverse_idempotent(-1.0, vec({1, 0})), std::invalid_argument);
}

TEST(Sweep, ResidualsStayAtRoundingLevel) {
  for (int dim : {2, 3}) {
    const auto sweep = run_sweep(42, 1000, dim);
    EXPECT_EQ(sweep.samples, 1000);
    EXPECT_LE(sweep.convex_combination, 1e-12);
    EXPECT_LE(sweep.inverse_idempotent, 1e-12);
    EXPECT_LE(sweep.elasticity_consistency, 1e-13);
    EXPECT_LE(sweep.stokes_consistency, 1e-13);
    EXPECT_LE(sweep.incompressibility, 1e-15);
  }
}

TEST(Sweep, IsDeterministicForASeed) {
  const auto a = run_sweep(9, 50, 2);
  const auto b = run_sweep(9, 50, 2);
  EXPECT_EQ(a.convex_combination, b.convex_combination);
  EXPECT_EQ(a.inverse_idempotent, b.inverse_idempotent);
}

} // namespace
} // namespace pfelast::fourier

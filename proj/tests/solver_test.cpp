#include "pfelast/condition.hpp"
#include "pfelast/diagnostics.hpp"
#include "pfelast/preconditioner.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace pfelast {
namespace {

using testing::energy;
using testing::random_vector;

class SolverFixture : public ::testing::TestWithParam<ElementKind> {
protected:
  void SetUp() override {
    system_ = testing::reduced_system(2, GetParam());
    solvers_ = make_inner_solvers(system_);
  }

  // P_h A^-1 g by the two-step definition: solve with A, then project
  // through the dense pressure Schur complement.
  Vector two_step_projection(const Vector& g) const {
    const DenseMatrix A(system_.A);
    const DenseMatrix B(system_.B);
    const Eigen::LLT<DenseMatrix> a_inverse(A);
    const DenseMatrix schur = B * a_inverse.solve(B.transpose());
    const Vector w = a_inverse.solve(g);
    const Vector p = schur.completeOrthogonalDecomposition().solve(B * w);
    return w - a_inverse.solve(B.transpose() * p);
  }

  ReducedSystem system_;
  InnerSolvers solvers_;
};

TEST_P(SolverFixture, ProjectionMatchesTwoStepDefinition) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Vector g = random_vector(system_.size(), s);
    const Vector expected = two_step_projection(g);
    EXPECT_LE((stokes_project_action(*solvers_.stokes, g) - expected).norm(), 1e-10 * expected.norm());
  }
}

TEST_P(SolverFixture, ProjectionFixesDivergenceFreeFields) {
  const auto& P = *solvers_.stokes;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Vector w = P.project(random_vector(system_.size(), s));
    ASSERT_LE((system_.B * w).norm(), 1e-10 * energy(system_.A, w));
    EXPECT_LE(energy(system_.A, P.project_action(system_.A * w) - w), 1e-10 * energy(system_.A, w));
  }
}

TEST_P(SolverFixture, ProjectionIsIdempotentAndDivergenceFree) {
  const auto& P = *solvers_.stokes;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Vector v = random_vector(system_.size(), s);
    const Vector pv = P.project(v);
    EXPECT_LE(energy(system_.A, P.project(pv) - pv), 1e-10 * energy(system_.A, v));
    EXPECT_LE((system_.B * pv).norm(), 1e-10 * energy(system_.A, v));
  }
}

TEST_P(SolverFixture, StokesPressureHasZeroMean) {
  const auto solution = solvers_.stokes->solve(random_vector(system_.size(), 4));
  EXPECT_NEAR(Vector(system_.MQ * solution.pressure).sum(), 0.0, 1e-12 * solution.pressure.norm());
}

TEST_P(SolverFixture, IterativeInnerSolversAgreeWithDirect) {
  InnerSolverOptions options;
  options.kind = InnerSolverKind::ConjugateGradient;
  const auto iterative = make_inner_solvers(system_, options);
  const Vector g = random_vector(system_.size(), 8);
  const Vector direct = solvers_.stokes->project_action(g);
  EXPECT_LE((iterative.stokes->project_action(g) - direct).norm(), 1e-8 * direct.norm());
  const Vector a_inv = solvers_.elasticity->solve(g);
  EXPECT_LE((iterative.elasticity->solve(g) - a_inv).norm(), 1e-10 * a_inv.norm());
}

TEST_P(SolverFixture, PreconditionerAtZeroLambdaIsElasticityInverse) {
  const Preconditioner M(0.0, solvers_);
  const auto factor = factor_spd(system_.A);
  const Vector g = random_vector(system_.size(), 2);
  const Vector expected = factor.solve(g);
  EXPECT_LE((apply_preconditioner(M, g) - expected).norm(), 1e-14 * expected.norm());
}

TEST_P(SolverFixture, PreconditionerAtHugeLambdaIsProjectedSolve) {
  const Preconditioner M(1e12, solvers_);
  const Vector g = random_vector(system_.size(), 3);
  const Vector expected = solvers_.stokes->project_action(g);
  EXPECT_LE((M.apply(g) - expected).norm(), 1e-6 * expected.norm());
}

TEST_P(SolverFixture, PreconditionerIsSymmetric) {
  for (double lambda : {0.5, 2499.5}) {
    const Preconditioner M(lambda, solvers_);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Vector g1 = random_vector(system_.size(), s), g2 = random_vector(system_.size(), s + 50);
      const Vector m1 = M.apply(g1), m2 = M.apply(g2);
      EXPECT_LE(std::abs(m1.dot(g2) - g1.dot(m2)), 1e-12 * std::sqrt(g1.dot(m1) * g2.dot(m2)));
    }
  }
}

TEST_P(SolverFixture, ExactInverseConvergesInOneIteration) {
  const LinearMap op = [&](const Vector& v) { return system_.apply_lambda(0.0, v); };
  const Preconditioner M(0.0, solvers_);
  const auto result = pcg_solve(op, system_.rhs(0.0), [&](const Vector& g) { return M.apply(g); });
  EXPECT_EQ(result.report.iterations, 1);
  EXPECT_NEAR(estimate_condition(result.report), 1.0, 1e-8);
  EXPECT_NEAR(estimate_condition(result.report, op, [&](const Vector& g) { return M.apply(g); }, system_.rhs(0.0)),
              1.0, 1e-6);
}

TEST_P(SolverFixture, EnergyErrorDecreasesMonotonically) {
  const double lambda = 2499.5;
  const SparseOperator K = assemble_lambda_matrix(system_.A, system_.B, system_.D, lambda);
  const Vector b = system_.rhs(lambda);
  const Vector exact = factor_spd(K).solve(b);
  std::vector<double> errors{energy(K, exact)};
  PcgOptions options;
  options.tolerance = 1e-10;
  options.on_iterate = [&](int, const Vector& x) { errors.push_back(energy(K, exact - x)); };
  const Preconditioner M(lambda, solvers_);
  pcg_solve([&](const Vector& v) { return system_.apply_lambda(lambda, v); }, b,
            [&](const Vector& g) { return M.apply(g); }, options);
  ASSERT_GT(errors.size(), 3u);
  for (std::size_t k = 1; k < errors.size(); ++k) EXPECT_LE(errors[k], errors[k - 1] * (1 + 1e-12));
}

TEST_P(SolverFixture, DenseSpectrumAgreesWithLanczos) {
  for (double nu : {0.25, 0.4, 0.49, 0.499, 0.4999}) {
    const double lambda = MaterialParameters::from_nu(nu).lambda;
    const Preconditioner M(lambda, solvers_);
    const LinearMap op = [&](const Vector& v) { return system_.apply_lambda(lambda, v); };
    const LinearMap pc = [&](const Vector& g) { return M.apply(g); };
    const Vector b = system_.rhs(lambda);
    const auto result = pcg_solve(op, b, pc);
    const double lanczos = estimate_condition(result.report, op, pc, b);
    const Vector spectrum = dense_preconditioned_spectrum(system_, M);
    const double dense = spectrum[spectrum.size() - 1] / spectrum[0];
    EXPECT_NEAR(lanczos, dense, 0.05 * dense) << "nu = " << nu;
    EXPECT_GT(spectrum[0], 0.0);
  }
}

TEST_P(SolverFixture, ClosedFormInverse) {
  // M^-1 = A + lambda A (I - P), checked column by column.
  const double lambda = 2.0;
  const Preconditioner M(lambda, solvers_);
  const DenseMatrix m = dense_operator([&](const Vector& g) { return M.apply(g); }, system_.size());
  const DenseMatrix A(system_.A);
  const DenseMatrix P = dense_operator([&](const Vector& v) { return solvers_.stokes->project(v); }, system_.size());
  const DenseMatrix inverse = A + lambda * A * (DenseMatrix::Identity(system_.size(), system_.size()) - P);
  EXPECT_LE((inverse * m - DenseMatrix::Identity(system_.size(), system_.size())).norm(), 1e-8);
}

TEST_P(SolverFixture, InfSupIsPositiveAndBounded) {
  const auto coarse = measure_inf_sup(system_.A, system_.B, system_.MQ);
  EXPECT_GT(coarse.beta_h, 0.0);
  EXPECT_LE(coarse.theta_max, 2.0 + 1e-8);
  EXPECT_EQ(coarse.null_modes, 1);
  const auto fine_system = testing::reduced_system(3, GetParam());
  const auto fine = measure_inf_sup(fine_system.A, fine_system.B, fine_system.MQ);
  EXPECT_LT(std::abs(fine.beta_h - coarse.beta_h), 0.2 * coarse.beta_h);
}

TEST_P(SolverFixture, NormEquivalenceOnRandomFields) {
  const auto inf_sup = measure_inf_sup(system_.A, system_.B, system_.MQ);
  const SpdFactorization pressure_mass(system_.MQ);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Vector v = random_vector(system_.size(), s);
    const auto eq = verify_norm_equivalence(system_, *solvers_.stokes, pressure_mass, inf_sup.beta_h, v);
    EXPECT_TRUE(eq.satisfied(1e-8 * eq.energy)) << eq.lower_slack << ' ' << eq.upper_slack;
    const double ratio = eq.div_norm / eq.energy;
    EXPECT_GE(ratio, inf_sup.beta_h - 1e-8);
    EXPECT_LE(ratio, std::sqrt(2.0) + 1e-8);
  }
}

TEST_P(SolverFixture, NormEquivalenceVanishesOnDivergenceFreeFields) {
  const auto inf_sup = measure_inf_sup(system_.A, system_.B, system_.MQ);
  const SpdFactorization pressure_mass(system_.MQ);
  const Vector w = random_vector(system_.size(), 1);
  const Vector v = solvers_.stokes->project(w);
  const auto eq = verify_norm_equivalence(system_, *solvers_.stokes, pressure_mass, inf_sup.beta_h, v);
  EXPECT_LE(eq.div_norm, 1e-10 * energy(system_.A, w));
  EXPECT_LE(eq.energy, 1e-10 * energy(system_.A, w));
}

INSTANTIATE_TEST_SUITE_P(BothPairs, SolverFixture, ::testing::Values(ElementKind::P0, ElementKind::P1),
                         [](const auto& info) { return to_string(info.param); });

TEST(Pcg, ZeroRightHandSideReturnsZero) {
  const auto result = pcg_solve([](const Vector& v) { return v; }, Vector::Zero(4), [](const Vector& v) { return v; });
  EXPECT_EQ(result.report.iterations, 0);
  EXPECT_TRUE(result.report.converged);
  EXPECT_EQ(result.solution, Vector::Zero(4));
}

TEST(Pcg, IterationCapThrowsWithReport) {
  const Vector diag = Vector::LinSpaced(50, 1.0, 1e4);
  PcgOptions options;
  options.max_iterations = 3;
  try {
    pcg_solve([&](const Vector& v) { return Vector(diag.cwiseProduct(v)); }, Vector::Ones(50),
              [](const Vector& v) { return v; }, options);
    FAIL() << "expected PcgDidNotConverge";
  } catch (const PcgDidNotConverge& e) {
    EXPECT_EQ(e.report().iterations, 3);
    EXPECT_FALSE(e.report().converged);
    EXPECT_EQ(e.report().lanczos_offdiag.size() + 1, e.report().lanczos_diag.size());
  }
}

TEST(Pcg, LanczosRecoversDiagonalSpectrum) {
  // Unpreconditioned CG on diag(1..8) with a full-support rhs runs 8 steps
  // and its tridiagonal reproduces the spectrum.
  const Vector diag = Vector::LinSpaced(8, 1.0, 8.0);
  PcgOptions options;
  options.tolerance = 1e-14;
  const auto result = pcg_solve([&](const Vector& v) { return Vector(diag.cwiseProduct(v)); }, Vector::Ones(8),
                                [](const Vector& v) { return v; }, options);
  EXPECT_NEAR(estimate_condition(result.report), 8.0, 1e-8);
}

TEST(Pcg, RejectsIndefiniteOperators) {
  const Vector diag = (Vector(3) << 1.0, -2.0, 3.0).finished();
  EXPECT_THROW(pcg_solve([&](const Vector& v) { return Vector(diag.cwiseProduct(v)); }, Vector::Ones(3),
                         [](const Vector& v) { return v; }),
               std::runtime_error);
}

TEST(Pcg, PreconditionedResidualRuleAlsoConverges) {
  const auto system = testing::reduced_system(2, ElementKind::P0);
  const Preconditioner M(2499.5, make_inner_solvers(system));
  PcgOptions options;
  options.rule = StoppingRule::PreconditionedResidual;
  const auto result = pcg_solve([&](const Vector& v) { return system.apply_lambda(2499.5, v); }, system.rhs(2499.5),
                                [&](const Vector& g) { return M.apply(g); }, options);
  EXPECT_TRUE(result.report.converged);
  EXPECT_LE(result.report.residual_history.back(), 1e-6);
}

TEST(Condition, RequiresLanczosData) {
  EXPECT_THROW(estimate_condition(SolveReport{}), std::invalid_argument);
}

TEST(Condition, ReorthogonalizedLanczosFindsExtremesOfDiagonalOperator) {
  const Vector diag = Vector::LinSpaced(40, 1.0, 25.0);
  const auto lanczos = preconditioned_lanczos([&](const Vector& v) { return Vector(diag.cwiseProduct(v)); },
                                              [](const Vector& v) { return v; }, Vector::Ones(40), 40);
  EXPECT_NEAR(condition_of(lanczos), 25.0, 1e-8);
}

TEST(Condition, RestartsWhenKrylovSpaceIsInvariant) {
  // The start vector excites only two eigenvalues; the restart must find the rest.
  const Vector diag = Vector::LinSpaced(10, 1.0, 10.0);
  Vector start = Vector::Zero(10);
  start[3] = 1.0;
  start[4] = 1.0;
  const auto lanczos = preconditioned_lanczos([&](const Vector& v) { return Vector(diag.cwiseProduct(v)); },
                                              [](const Vector& v) { return v; }, start, 10);
  EXPECT_EQ(lanczos.steps, 10);
  EXPECT_NEAR(condition_of(lanczos), 10.0, 1e-8);
}

} // namespace
} // namespace pfelast

#include "pfelast/condition.hpp"

#include <cmath>
#include <random>

namespace pfelast {

double estimate_condition(const SolveReport& report) {
  if (report.lanczos_diag.empty()) throw std::invalid_argument("estimate_condition: no Lanczos data");
  const Vector diag = Eigen::Map<const Vector>(report.lanczos_diag.data(),
                                               static_cast<Eigen::Index>(report.lanczos_diag.size()));
  const Vector off = Eigen::Map<const Vector>(report.lanczos_offdiag.data(),
                                              static_cast<Eigen::Index>(report.lanczos_offdiag.size()));
  const Vector eig = tridiagonal_eigs(diag, off);
  return std::max(1.0, eig[eig.size() - 1] / eig[0]);
}

LanczosResult preconditioned_lanczos(const LinearMap& op, const LinearMap& preconditioner, const Vector& start,
                                     int max_steps, std::uint64_t seed) {
  if (max_steps < 1) throw std::invalid_argument("preconditioned_lanczos: max_steps must be positive");
  // Lanczos for K = M*op, which is self-adjoint in the op inner product.
  // Basis vectors are op-orthonormal; op*v is kept for each of them.
  std::vector<Vector> basis, op_basis;
  std::vector<double> alphas, betas;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  const auto orthonormalize = [&](Vector& w, Vector& op_w) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < basis.size(); ++j) w.noalias() -= w.dot(op_basis[j]) * basis[j];
    }
    op_w = op(w);
    return std::sqrt(std::max(w.dot(op_w), 0.0));
  };

  Vector v = preconditioner(start);
  Vector op_v = op(v);
  double norm = std::sqrt(std::max(v.dot(op_v), 0.0));
  if (!(norm > 0.0)) throw std::invalid_argument("preconditioned_lanczos: zero start vector");
  v /= norm;
  op_v /= norm;
  double scale = 0.0;

  for (int step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    op_basis.push_back(op_v);
    Vector w = preconditioner(op_v);
    const double alpha = w.dot(op_v);
    alphas.push_back(alpha);
    scale = std::max(scale, std::abs(alpha));
    if (step + 1 == max_steps || static_cast<Eigen::Index>(basis.size()) == start.size()) break;

    Vector op_w;
    double beta = orthonormalize(w, op_w);
    if (beta <= 1e-8 * scale) {
      // Invariant subspace of the start vector: continue from a random
      // direction so the rest of the spectrum is still sampled.
      Vector g(start.size());
      for (auto& c : g) c = normal(rng);
      w = preconditioner(g);
      const double restart_norm = std::sqrt(std::max(w.dot(op(w)), 0.0));
      w /= restart_norm;
      const double fresh = orthonormalize(w, op_w);
      if (!(fresh > 1e-8)) break;
      w /= fresh;
      op_w /= fresh;
      betas.push_back(0.0);
    } else {
      w /= beta;
      op_w /= beta;
      betas.push_back(beta);
    }
    v = std::move(w);
    op_v = std::move(op_w);
  }

  LanczosResult out;
  out.steps = static_cast<int>(alphas.size());
  out.diag = Eigen::Map<Vector>(alphas.data(), static_cast<Eigen::Index>(alphas.size()));
  out.offdiag = Eigen::Map<Vector>(betas.data(), static_cast<Eigen::Index>(betas.size()));
  return out;
}

double condition_of(const LanczosResult& lanczos) {
  const Vector eig = tridiagonal_eigs(lanczos.diag, lanczos.offdiag);
  return std::max(1.0, eig[eig.size() - 1] / eig[0]);
}

double estimate_condition(const SolveReport& report, const LinearMap& op, const LinearMap& preconditioner,
                          const Vector& rhs, int short_run, int max_steps) {
  if (report.iterations >= short_run) return estimate_condition(report);
  if (rhs.norm() == 0.0) return 1.0;
  return condition_of(preconditioned_lanczos(op, preconditioner, rhs, max_steps));
}

DenseMatrix dense_operator(const LinearMap& map, int size) {
  DenseMatrix out(size, size);
  Vector unit = Vector::Zero(size);
  for (int j = 0; j < size; ++j) {
    unit[j] = 1.0;
    out.col(j) = map(unit);
    unit[j] = 0.0;
  }
  return out;
}

Vector dense_preconditioned_spectrum(const ReducedSystem& system, const Preconditioner& preconditioner) {
  const int n = system.size();
  if (n > kDenseLimit)
    throw std::invalid_argument("dense_preconditioned_spectrum: dimension " + std::to_string(n) +
                                " exceeds dense limit " + std::to_string(kDenseLimit));
  DenseMatrix M = dense_operator([&](const Vector& g) { return preconditioner.apply(g); }, n);
  M = 0.5 * (M + M.transpose()).eval();
  const DenseMatrix A_lambda = DenseMatrix(assemble_lambda_matrix(system.A, system.B, system.D, preconditioner.lambda()));
  // Spectrum of A_lambda * M equals that of M * A_lambda.
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> solver(A_lambda, M, Eigen::ABx_lx | Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense_preconditioned_spectrum: eigensolver failed");
  return solver.eigenvalues();
}

} // namespace pfelast

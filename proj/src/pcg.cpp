#include "pfelast/pcg.hpp"

#include "pfelast/sparse.hpp"

#include <chrono>
#include <cmath>

namespace pfelast {

namespace {

double condition_from_tridiagonal(const std::vector<double>& diag, const std::vector<double>& offdiag) {
  const Vector eig = tridiagonal_eigs(Eigen::Map<const Vector>(diag.data(), static_cast<Eigen::Index>(diag.size())),
                                      Eigen::Map<const Vector>(offdiag.data(), static_cast<Eigen::Index>(offdiag.size())));
  return std::max(1.0, eig[eig.size() - 1] / eig[0]);
}

} // namespace

PcgResult pcg_solve(const LinearMap& op, const Vector& rhs, const LinearMap& preconditioner,
                    const PcgOptions& options) {
  if (!(options.tolerance > 0.0 && options.tolerance < 1.0))
    throw std::invalid_argument("pcg_solve: tolerance must lie in (0, 1)");
  const auto start = std::chrono::steady_clock::now();
  PcgResult result{Vector::Zero(rhs.size()), {}};
  SolveReport& report = result.report;

  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    report.converged = true;
    report.residual_history.push_back(0.0);
    return result;
  }

  Vector& x = result.solution;
  Vector r = rhs;
  Vector z = preconditioner(r);
  Vector p = z;
  double rho = r.dot(z);
  const double rhs_mnorm = std::sqrt(rho);
  report.residual_history.push_back(1.0);

  double alpha_prev = 0.0, beta_prev = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const Vector q = op(p);
    const double curvature = p.dot(q);
    if (!(curvature > 0.0))
      throw std::runtime_error("pcg_solve: operator is not positive definite (p.Ap = " +
                               std::to_string(curvature) + ")");
    const double alpha = rho / curvature;
    x.noalias() += alpha * p;
    r.noalias() -= alpha * q;
    if (options.on_iterate) options.on_iterate(it + 1, x);
    z = preconditioner(r);
    const double rho_next = r.dot(z);

    report.lanczos_diag.push_back(1.0 / alpha + (it > 0 ? beta_prev / alpha_prev : 0.0));
    report.iterations = it + 1;

    double residual = 0.0;
    if (options.rule == StoppingRule::TrueResidual) {
      residual = (rhs - op(x)).norm() / rhs_norm;
    } else {
      residual = std::sqrt(std::max(rho_next, 0.0)) / rhs_mnorm;
    }
    report.residual_history.push_back(residual);
    if (residual <= options.tolerance) {
      report.converged = true;
      break;
    }

    const double beta = rho_next / rho;
    report.lanczos_offdiag.push_back(std::sqrt(beta) / alpha);
    p = z + beta * p;
    rho = rho_next;
    alpha_prev = alpha;
    beta_prev = beta;
  }

  // A non-converged run carries one extra off-diagonal; drop it so the
  // tridiagonal stays square.
  if (report.lanczos_offdiag.size() >= report.lanczos_diag.size()) report.lanczos_offdiag.pop_back();
  report.condition_estimate = condition_from_tridiagonal(report.lanczos_diag, report.lanczos_offdiag);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!report.converged) {
    throw PcgDidNotConverge("pcg_solve: no convergence after " + std::to_string(options.max_iterations) +
                                " iterations (relative residual " +
                                std::to_string(report.residual_history.back()) + ")",
                            report);
  }
  return result;
}

Vector conjugate_gradient(const LinearMap& op, const Vector& rhs, const LinearMap& preconditioner,
                          double tolerance, int max_iterations, int* iterations) {
  Vector x = Vector::Zero(rhs.size());
  const double rhs_norm = rhs.norm();
  if (iterations) *iterations = 0;
  if (rhs_norm == 0.0) return x;
  Vector r = rhs;
  Vector z = preconditioner(r);
  Vector p = z;
  double rho = r.dot(z);
  for (int it = 0; it < max_iterations; ++it) {
    const Vector q = op(p);
    const double alpha = rho / p.dot(q);
    x.noalias() += alpha * p;
    r.noalias() -= alpha * q;
    if (r.norm() <= tolerance * rhs_norm) {
      if (iterations) *iterations = it + 1;
      return x;
    }
    z = preconditioner(r);
    const double rho_next = r.dot(z);
    p = z + (rho_next / rho) * p;
    rho = rho_next;
  }
  throw std::runtime_error("conjugate_gradient: no convergence after " + std::to_string(max_iterations) +
                           " iterations");
}

} // namespace pfelast

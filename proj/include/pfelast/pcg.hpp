#pragma once

#include "pfelast/types.hpp"

#include <functional>
#include <vector>

namespace pfelast {

using LinearMap = std::function<Vector(const Vector&)>;

enum class StoppingRule {
  TrueResidual,            ///< ||b - A x|| / ||b||, recomputed each iteration
  PreconditionedResidual,  ///< sqrt(r.Mr / b.Mb) from the recurrence
};

struct PcgOptions {
  double tolerance = 1e-6;
  int max_iterations = 500;
  StoppingRule rule = StoppingRule::TrueResidual;
  /// Called with (iteration, iterate) after every update when set.
  std::function<void(int, const Vector&)> on_iterate;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  /// Relative residual (in the stopping-rule norm), entry 0 is the initial one.
  std::vector<double> residual_history;
  /// Lanczos tridiagonal recovered from the CG coefficients.
  std::vector<double> lanczos_diag;
  std::vector<double> lanczos_offdiag;
  double condition_estimate = 1.0;
  double wall_seconds = 0.0;
};

class PcgDidNotConverge : public std::runtime_error {
public:
  PcgDidNotConverge(const std::string& what, SolveReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  [[nodiscard]] const SolveReport& report() const { return report_; }

private:
  SolveReport report_;
};

struct PcgResult {
  Vector solution;
  SolveReport report;
};

/// Preconditioned conjugate gradients from a zero initial guess.
/// Throws PcgDidNotConverge when the iteration cap is hit.
PcgResult pcg_solve(const LinearMap& op, const Vector& rhs, const LinearMap& preconditioner,
                    const PcgOptions& options = {});

/// Plain PCG with recursive residual, used for inner solves.
/// Returns the iteration count through `iterations` when non-null.
Vector conjugate_gradient(const LinearMap& op, const Vector& rhs, const LinearMap& preconditioner,
                          double tolerance, int max_iterations, int* iterations = nullptr);

} // namespace pfelast

#pragma once

#include "pfelast/projector.hpp"

namespace pfelast {

/// Lambda-independent pieces shared by every preconditioner on one mesh
/// and element pair: the A^-1 action and the Stokes projector.
struct InnerSolvers {
  std::shared_ptr<const ElasticityInverse> elasticity;
  std::shared_ptr<const StokesProjector> stokes;
};

InnerSolvers make_inner_solvers(const ReducedSystem& system, InnerSolverOptions options = {});

/// M = lambda/(1+lambda) P_h A^-1 + 1/(1+lambda) A^-1.
class Preconditioner {
public:
  Preconditioner(double lambda, InnerSolvers solvers);

  [[nodiscard]] Vector apply(const Vector& g) const;
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] const InnerSolvers& solvers() const { return solvers_; }

private:
  double lambda_;
  InnerSolvers solvers_;
};

Vector apply_preconditioner(const Preconditioner& preconditioner, const Vector& g);

} // namespace pfelast

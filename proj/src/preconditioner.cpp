#include "pfelast/preconditioner.hpp"

namespace pfelast {

InnerSolvers make_inner_solvers(const ReducedSystem& system, InnerSolverOptions options) {
  InnerSolvers s;
  s.elasticity = std::make_shared<const ElasticityInverse>(system.A, options);
  s.stokes = std::make_shared<const StokesProjector>(system.A, system.B, system.MQ, options, s.elasticity);
  return s;
}

Preconditioner::Preconditioner(double lambda, InnerSolvers solvers) : lambda_(lambda), solvers_(std::move(solvers)) {
  if (!(lambda_ >= 0.0)) throw std::invalid_argument("Preconditioner: lambda must be nonnegative");
  if (!solvers_.elasticity || !solvers_.stokes) throw std::invalid_argument("Preconditioner: missing inner solvers");
}

Vector Preconditioner::apply(const Vector& g) const {
  const double stokes_weight = lambda_ / (1.0 + lambda_);
  const double elastic_weight = 1.0 / (1.0 + lambda_);
  Vector out = elastic_weight * solvers_.elasticity->solve(g);
  if (stokes_weight != 0.0) out.noalias() += stokes_weight * solvers_.stokes->project_action(g);
  return out;
}

Vector apply_preconditioner(const Preconditioner& preconditioner, const Vector& g) {
  return preconditioner.apply(g);
}

} // namespace pfelast

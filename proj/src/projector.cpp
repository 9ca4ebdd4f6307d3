#include "pfelast/projector.hpp"

#include "pfelast/pcg.hpp"

namespace pfelast {

ElasticityInverse::ElasticityInverse(const SparseOperator& A, InnerSolverOptions options)
    : A_(A), options_(options) {
  if (options_.kind == InnerSolverKind::Direct) {
    factor_.emplace(A_);
  } else {
    inverse_diagonal_ = A_.diagonal().cwiseInverse();
  }
}

Vector ElasticityInverse::solve(const Vector& rhs) const {
  if (factor_) return factor_->solve(rhs);
  return conjugate_gradient([this](const Vector& v) { return Vector(A_ * v); }, rhs,
                            [this](const Vector& r) { return Vector(r.cwiseProduct(inverse_diagonal_)); },
                            options_.tolerance, options_.max_iterations);
}

SparseOperator build_saddle_matrix(const SparseOperator& A, const SparseOperator& B, int pinned) {
  const int nv = static_cast<int>(A.rows());
  const int nq = static_cast<int>(B.rows());
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(static_cast<std::size_t>(A.nonZeros() + 2 * B.nonZeros() + 1));
  for (int r = 0; r < A.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(A, r); it; ++it) triplets.emplace_back(r, static_cast<int>(it.col()), it.value());
  for (int q = 0; q < B.outerSize(); ++q) {
    if (q == pinned) continue;
    for (SparseOperator::InnerIterator it(B, q); it; ++it) {
      triplets.emplace_back(nv + q, static_cast<int>(it.col()), it.value());
      triplets.emplace_back(static_cast<int>(it.col()), nv + q, it.value());
    }
  }
  if (pinned >= 0) triplets.emplace_back(nv + pinned, nv + pinned, 1.0);
  SparseOperator K(nv + nq, nv + nq);
  K.setFromTriplets(triplets.begin(), triplets.end());
  K.makeCompressed();
  return K;
}

StokesProjector::StokesProjector(const SparseOperator& A, const SparseOperator& B, const SparseOperator& MQ,
                                 InnerSolverOptions options, std::shared_ptr<const ElasticityInverse> elasticity)
    : A_(A), B_(B), MQ_(MQ), options_(options), elasticity_(std::move(elasticity)) {
  if (B_.cols() != A_.rows())
    throw std::invalid_argument("StokesProjector: B columns do not match A");
  if (options_.kind == InnerSolverKind::Direct) {
    saddle_.emplace(build_saddle_matrix(A_, B_, 0));
  } else if (!elasticity_) {
    elasticity_ = std::make_shared<const ElasticityInverse>(A_, options_);
  }
}

Vector StokesProjector::schur_pressure(const Vector& momentum) const {
  // S p = B A^-1 g with S = B A^-1 B^T, singular on constants but consistent.
  const Vector rhs = B_ * elasticity_->solve(momentum);
  const Vector mass_diag_inv = MQ_.diagonal().cwiseInverse();
  const auto schur = [this](const Vector& q) {
    return Vector(B_ * elasticity_->solve(B_.transpose() * q));
  };
  return conjugate_gradient(schur, rhs,
                            [&](const Vector& r) { return Vector(r.cwiseProduct(mass_diag_inv)); },
                            options_.tolerance, options_.max_iterations);
}

StokesSolution StokesProjector::solve(const Vector& momentum) const {
  const int nv = velocity_size();
  const int nq = pressure_size();
  if (momentum.size() != nv) throw std::invalid_argument("StokesProjector::solve: wrong vector size");
  StokesSolution out;
  if (saddle_) {
    Vector rhs = Vector::Zero(nv + nq);
    rhs.head(nv) = momentum;
    const Vector sol = saddle_->solve(rhs);
    out.velocity = sol.head(nv);
    out.pressure = sol.tail(nq);
  } else {
    out.pressure = schur_pressure(momentum);
    out.velocity = elasticity_->solve(momentum - B_.transpose() * out.pressure);
  }
  const Vector ones = Vector::Ones(nq);
  const Vector mass_ones = MQ_ * ones;
  out.pressure.array() -= mass_ones.dot(out.pressure) / mass_ones.sum();
  return out;
}

Vector stokes_project_action(const StokesProjector& projector, const Vector& g) {
  return projector.project_action(g);
}

} // namespace pfelast

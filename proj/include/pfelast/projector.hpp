#pragma once

#include "pfelast/reduced_system.hpp"
#include "pfelast/sparse.hpp"

#include <memory>
#include <optional>

namespace pfelast {

enum class InnerSolverKind {
  Direct,             ///< sparse direct factorizations (default)
  ConjugateGradient,  ///< Jacobi-CG for A, Schur-complement CG for Stokes
};

struct InnerSolverOptions {
  InnerSolverKind kind = InnerSolverKind::Direct;
  double tolerance = 1e-12;
  int max_iterations = 20000;
};

/// Action of A^-1 on the reduced velocity space.
class ElasticityInverse {
public:
  explicit ElasticityInverse(const SparseOperator& A, InnerSolverOptions options = {});

  [[nodiscard]] Vector solve(const Vector& rhs) const;
  [[nodiscard]] int size() const { return static_cast<int>(A_.rows()); }

private:
  SparseOperator A_;
  InnerSolverOptions options_;
  std::optional<SpdFactorization> factor_;
  Vector inverse_diagonal_;
};

struct StokesSolution {
  Vector velocity;
  Vector pressure;  ///< normalized to zero mean
};

/// Discrete Stokes solve defining the a(.,.)-orthogonal projection onto
/// discretely divergence-free velocities.
///
/// With momentum data g and zero divergence data the velocity equals
/// P_h A^-1 g. The constant pressure mode is removed by pinning pressure
/// dof 0 in the saddle matrix; the factorization is lambda-independent.
class StokesProjector {
public:
  StokesProjector(const SparseOperator& A, const SparseOperator& B, const SparseOperator& MQ,
                  InnerSolverOptions options = {},
                  std::shared_ptr<const ElasticityInverse> elasticity = nullptr);

  [[nodiscard]] StokesSolution solve(const Vector& momentum) const;
  /// P_h A^-1 g.
  [[nodiscard]] Vector project_action(const Vector& g) const { return solve(g).velocity; }
  /// P_h v.
  [[nodiscard]] Vector project(const Vector& v) const { return project_action(A_ * v); }

  [[nodiscard]] int velocity_size() const { return static_cast<int>(A_.rows()); }
  [[nodiscard]] int pressure_size() const { return static_cast<int>(B_.rows()); }
  [[nodiscard]] const SparseOperator& A() const { return A_; }
  [[nodiscard]] const SparseOperator& B() const { return B_; }

private:
  [[nodiscard]] Vector schur_pressure(const Vector& momentum) const;

  SparseOperator A_;
  SparseOperator B_;
  SparseOperator MQ_;
  InnerSolverOptions options_;
  std::optional<SymmetricIndefiniteFactorization> saddle_;
  std::shared_ptr<const ElasticityInverse> elasticity_;
};

/// Assembles [[A, B^T], [B, 0]] with pressure dof `pinned` fixed to zero
/// (pass -1 to keep the singular matrix).
SparseOperator build_saddle_matrix(const SparseOperator& A, const SparseOperator& B, int pinned = 0);

Vector stokes_project_action(const StokesProjector& projector, const Vector& g);

} // namespace pfelast

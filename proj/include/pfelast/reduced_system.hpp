#pragma once

#include "pfelast/assembly.hpp"

namespace pfelast {

/// Operators restricted to the Dirichlet-free velocity dofs.
///
/// Boundary dofs carry the nodal interpolant of the exact displacement
/// (the lift); the lift enters the right-hand side through A and, for
/// lambda > 0, through the penalty term.
struct ReducedSystem {
  std::shared_ptr<const DofSpace> velocity;
  std::shared_ptr<const DofSpace> pressure;
  std::vector<int> free_dofs;
  std::vector<int> full_to_free;  ///< -1 on Dirichlet dofs
  SparseOperator A;                ///< free x free
  SparseOperator B;                ///< pressure x free
  SparseOperator MQ;
  Vector D;
  Vector load;            ///< free part of the assembled load
  Vector lift;            ///< full vector, zero on free dofs
  Vector lift_stiffness;  ///< free part of A * lift
  Vector lift_div;        ///< B_full * lift

  [[nodiscard]] int size() const { return static_cast<int>(free_dofs.size()); }
  [[nodiscard]] int pressure_size() const { return static_cast<int>(B.rows()); }
  /// Right-hand side of the reduced problem for a given lambda.
  [[nodiscard]] Vector rhs(double lambda) const;
  /// Full coefficient vector: free values plus the lift.
  [[nodiscard]] Vector expand(const Vector& free_values) const;
  [[nodiscard]] Vector restrict_to_free(const Vector& full) const;
  /// (A + lambda B^T D^-1 B) v on the free dofs.
  [[nodiscard]] Vector apply_lambda(double lambda, const Vector& v) const;
};

ReducedSystem apply_dirichlet(const AssembledSystem& sys, const ManufacturedProblem& problem);

/// Rows/columns of a sparse matrix selected by index lists.
SparseOperator extract_submatrix(const SparseOperator& matrix, const std::vector<int>& row_map,
                                 const std::vector<int>& col_map, int rows, int cols);

} // namespace pfelast

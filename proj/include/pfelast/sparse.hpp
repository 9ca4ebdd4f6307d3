#pragma once

#include "pfelast/types.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <optional>
#include <string>

namespace pfelast {

/// Cholesky-type (LDL^T, AMD ordering) factorization of an SPD matrix.
/// Construction fails with FactorizationError on the first nonpositive pivot.
class SpdFactorization {
public:
  explicit SpdFactorization(const SparseOperator& matrix);

  [[nodiscard]] Vector solve(const Vector& rhs) const;
  [[nodiscard]] int size() const { return size_; }
  /// Fill-reducing ordering: entry i is the elimination position of row i.
  [[nodiscard]] Eigen::VectorXi ordering() const;

private:
  using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  Eigen::SimplicialLDLT<ColMajor, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
  int size_ = 0;
};

/// Direct factorization of a nonsingular symmetric (possibly indefinite)
/// matrix, e.g. a pressure-pinned saddle-point system. Backed by a
/// partial-pivoting sparse LU with COLAMD ordering.
class SymmetricIndefiniteFactorization {
public:
  explicit SymmetricIndefiniteFactorization(const SparseOperator& matrix);

  [[nodiscard]] Vector solve(const Vector& rhs) const;
  [[nodiscard]] int size() const { return size_; }

private:
  using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  // SparseLU::solve is logically const but not declared so.
  mutable Eigen::SparseLU<ColMajor, Eigen::COLAMDOrdering<int>> lu_;
  int size_ = 0;
};

SpdFactorization factor_spd(const SparseOperator& matrix);
SymmetricIndefiniteFactorization factor_symmetric_indefinite(const SparseOperator& matrix);

struct EigenPairs {
  Vector values;        ///< ascending
  DenseMatrix vectors;  ///< columns, M-orthonormal
};

/// All eigenpairs of K x = theta M x for symmetric K and SPD M.
EigenPairs dense_symmetric_generalized_eigs(const DenseMatrix& stiffness, const DenseMatrix& mass);

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with the
/// given diagonal and off-diagonal.
Vector tridiagonal_eigs(const Vector& diag, const Vector& offdiag);

/// Largest absolute entry of A - A^T.
double max_asymmetry(const SparseOperator& matrix);

/// Matrix Market coordinate format (1-based row, column, value).
void save_matrix_market(const SparseOperator& matrix, const std::string& path);
SparseOperator load_matrix_market(const std::string& path);

} // namespace pfelast

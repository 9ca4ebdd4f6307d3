#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace pfelast {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Compressed row storage with sorted column indices per row.
using SparseOperator = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

using Point = Eigen::Vector2d;

/// Raised when a direct factorization cannot be completed.
class FactorizationError : public std::runtime_error {
public:
  FactorizationError(const std::string& what, long pivot = -1)
      : std::runtime_error(what), pivot_(pivot) {}

  /// Offending pivot in the original (unpermuted) numbering, or -1.
  [[nodiscard]] long pivot() const noexcept { return pivot_; }

private:
  long pivot_;
};

} // namespace pfelast

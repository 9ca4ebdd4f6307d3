#include "pfelast/sparse.hpp"

#include <unsupported/Eigen/SparseExtra>

#include <random>

namespace pfelast {

SpdFactorization::SpdFactorization(const SparseOperator& matrix) : size_(static_cast<int>(matrix.rows())) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("factor_spd: matrix is not square");
  const ColMajor lower = ColMajor(matrix).triangularView<Eigen::Lower>();
  ldlt_.compute(lower);
  const Vector d = ldlt_.vectorD();
  const Eigen::VectorXi position = ordering();
  for (int k = 0; k < d.size(); ++k) {
    if (!(d[k] > 0.0)) {
      long original = -1;
      for (int i = 0; i < position.size(); ++i)
        if (position[i] == k) original = i;
      throw FactorizationError("factor_spd: matrix is not SPD (nonpositive pivot " +
                                   std::to_string(d[k]) + " at row " + std::to_string(original) + ")",
                               original);
    }
  }
  if (ldlt_.info() != Eigen::Success)
    throw FactorizationError("factor_spd: numerical failure");
}

Vector SpdFactorization::solve(const Vector& rhs) const { return ldlt_.solve(rhs); }

Eigen::VectorXi SpdFactorization::ordering() const { return ldlt_.permutationP().indices(); }

SymmetricIndefiniteFactorization::SymmetricIndefiniteFactorization(const SparseOperator& matrix)
    : size_(static_cast<int>(matrix.rows())) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("factor_symmetric_indefinite: matrix is not square");
  ColMajor k(matrix);
  k.makeCompressed();
  lu_.analyzePattern(k);
  lu_.factorize(k);
  if (lu_.info() != Eigen::Success)
    throw FactorizationError("factor_symmetric_indefinite: singular matrix (" + lu_.lastErrorMessage() + ")");

  // A rank deficiency of one usually survives elimination as a pivot of
  // round-off size rather than an exact zero. A generic right-hand side
  // then has a component outside the range and cannot be matched.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector probe(size_);
  for (auto& v : probe) v = dist(rng);
  const Vector x = lu_.solve(probe);
  const double residual = (k * x - probe).norm() / probe.norm();
  if (!x.allFinite() || residual > 1e-8) {
    throw FactorizationError("factor_symmetric_indefinite: matrix is numerically singular (probe residual " +
                             std::to_string(residual) + "); remove the nullspace, e.g. pin a pressure dof");
  }
}

Vector SymmetricIndefiniteFactorization::solve(const Vector& rhs) const { return lu_.solve(rhs); }

SpdFactorization factor_spd(const SparseOperator& matrix) { return SpdFactorization(matrix); }

SymmetricIndefiniteFactorization factor_symmetric_indefinite(const SparseOperator& matrix) {
  return SymmetricIndefiniteFactorization(matrix);
}

EigenPairs dense_symmetric_generalized_eigs(const DenseMatrix& stiffness, const DenseMatrix& mass) {
  if (stiffness.rows() != stiffness.cols() || mass.rows() != mass.cols() ||
      stiffness.rows() != mass.rows())
    throw std::invalid_argument("dense_symmetric_generalized_eigs: dimension mismatch");
  Eigen::LLT<DenseMatrix> llt(mass);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("dense_symmetric_generalized_eigs: mass matrix is not SPD");
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> solver(stiffness, mass);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense_symmetric_generalized_eigs: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Vector tridiagonal_eigs(const Vector& diag, const Vector& offdiag) {
  if (diag.size() == 0) throw std::invalid_argument("tridiagonal_eigs: empty input");
  if (offdiag.size() != diag.size() - 1)
    throw std::invalid_argument("tridiagonal_eigs: off-diagonal must have n-1 entries");
  if (diag.size() == 1) return diag;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("tridiagonal_eigs: QL iteration did not converge");
  return solver.eigenvalues();
}

double max_asymmetry(const SparseOperator& matrix) {
  const SparseOperator transpose = matrix.transpose();
  const SparseOperator diff = matrix - transpose;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

void save_matrix_market(const SparseOperator& matrix, const std::string& path) {
  if (!Eigen::saveMarket(matrix, path))
    throw std::runtime_error("save_matrix_market: cannot write " + path);
}

SparseOperator load_matrix_market(const std::string& path) {
  SparseOperator matrix;
  if (!Eigen::loadMarket(matrix, path))
    throw std::runtime_error("load_matrix_market: cannot read " + path);
  matrix.makeCompressed();
  return matrix;
}

} // namespace pfelast

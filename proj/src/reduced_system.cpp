#include "pfelast/reduced_system.hpp"

#include <numeric>

namespace pfelast {

SparseOperator extract_submatrix(const SparseOperator& matrix, const std::vector<int>& row_map,
                                 const std::vector<int>& col_map, int rows, int cols) {
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(static_cast<std::size_t>(matrix.nonZeros()));
  for (int r = 0; r < matrix.outerSize(); ++r) {
    const int new_row = row_map[static_cast<std::size_t>(r)];
    if (new_row < 0) continue;
    for (SparseOperator::InnerIterator it(matrix, r); it; ++it) {
      const int new_col = col_map[static_cast<std::size_t>(it.col())];
      if (new_col >= 0) triplets.emplace_back(new_row, new_col, it.value());
    }
  }
  SparseOperator out(rows, cols);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

ReducedSystem apply_dirichlet(const AssembledSystem& sys, const ManufacturedProblem& problem) {
  ReducedSystem red;
  red.velocity = sys.velocity;
  red.pressure = sys.pressure;
  const auto& mask = sys.velocity->dirichlet_mask();
  const int n = sys.velocity->num_dofs();
  red.full_to_free.assign(static_cast<std::size_t>(n), -1);
  for (int d = 0; d < n; ++d) {
    if (!mask[static_cast<std::size_t>(d)]) {
      red.full_to_free[static_cast<std::size_t>(d)] = static_cast<int>(red.free_dofs.size());
      red.free_dofs.push_back(d);
    }
  }
  const int nf = red.size();
  const int nq = static_cast<int>(sys.B.rows());
  std::vector<int> identity(static_cast<std::size_t>(nq));
  std::iota(identity.begin(), identity.end(), 0);

  red.A = extract_submatrix(sys.A, red.full_to_free, red.full_to_free, nf, nf);
  red.B = extract_submatrix(sys.B, identity, red.full_to_free, nq, nf);
  red.MQ = sys.MQ;
  red.D = sys.D;

  red.lift = Vector::Zero(n);
  for (int d = 0; d < n; d += 2) {
    if (!mask[static_cast<std::size_t>(d)]) continue;
    const Eigen::Vector2d g = problem.displacement(sys.velocity->support_point(d));
    red.lift[d] = g[0];
    red.lift[d + 1] = g[1];
  }
  red.load = red.restrict_to_free(sys.rhs);
  red.lift_stiffness = red.restrict_to_free(sys.A * red.lift);
  red.lift_div = sys.B * red.lift;
  return red;
}

Vector ReducedSystem::rhs(double lambda) const {
  Vector out = load - lift_stiffness;
  if (lambda != 0.0) out.noalias() -= lambda * (B.transpose() * lift_div.cwiseQuotient(D));
  return out;
}

Vector ReducedSystem::expand(const Vector& free_values) const {
  Vector full = lift;
  for (int i = 0; i < size(); ++i) full[free_dofs[static_cast<std::size_t>(i)]] = free_values[i];
  return full;
}

Vector ReducedSystem::restrict_to_free(const Vector& full) const {
  Vector out(size());
  for (int i = 0; i < size(); ++i) out[i] = full[free_dofs[static_cast<std::size_t>(i)]];
  return out;
}

Vector ReducedSystem::apply_lambda(double lambda, const Vector& v) const {
  return apply_lambda_operator(A, B, D, lambda, v);
}

} // namespace pfelast

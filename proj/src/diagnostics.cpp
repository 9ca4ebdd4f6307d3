#include "pfelast/diagnostics.hpp"

#include "pfelast/condition.hpp"

#include <cmath>

namespace pfelast {

InfSupReport measure_inf_sup(const SparseOperator& A, const SparseOperator& B, const SparseOperator& MQ) {
  const int nv = static_cast<int>(A.rows());
  const int nq = static_cast<int>(B.rows());
  if (nv > kDenseLimit || nq > kDenseLimit)
    throw std::invalid_argument("measure_inf_sup: problem size (" + std::to_string(nv) + ", " +
                                std::to_string(nq) + ") exceeds the dense limit");
  const SpdFactorization factor(A);
  const DenseMatrix Bt = DenseMatrix(SparseOperator(B.transpose()));
  DenseMatrix X(nv, nq);
  for (int k = 0; k < nq; ++k) X.col(k) = factor.solve(Bt.col(k));
  DenseMatrix S = B * X;
  S = 0.5 * (S + S.transpose()).eval();

  const auto pairs = dense_symmetric_generalized_eigs(S, DenseMatrix(MQ));
  InfSupReport report;
  report.theta_max = pairs.values[nq - 1];
  int first = 0;
  while (first < nq && pairs.values[first] <= 1e-8 * report.theta_max) ++first;
  if (first == nq) throw std::runtime_error("measure_inf_sup: no nonzero eigenvalue");
  report.null_modes = first;
  report.beta_h = std::sqrt(pairs.values[first]);
  return report;
}

NormEquivalence verify_norm_equivalence(const ReducedSystem& system, const StokesProjector& projector,
                                        const SpdFactorization& pressure_mass, double beta_h, const Vector& v) {
  NormEquivalence out;
  const Vector div = system.B * v;
  out.div_norm = std::sqrt(std::max(0.0, div.dot(pressure_mass.solve(div))));
  const Vector w = v - projector.project(v);
  out.energy = std::sqrt(std::max(0.0, w.dot(system.A * w)));
  out.upper_slack = std::sqrt(2.0) * out.energy - out.div_norm;
  out.lower_slack = out.div_norm - beta_h * out.energy;
  return out;
}

} // namespace pfelast

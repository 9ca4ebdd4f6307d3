#pragma once

#include "pfelast/projector.hpp"

#include <string>

namespace pfelast {

struct InfSupReport {
  double beta_h = 0.0;     ///< sqrt of the smallest nonzero eigenvalue
  double theta_max = 0.0;  ///< largest eigenvalue, bounded by the dimension (2)
  int null_modes = 0;      ///< excluded near-zero eigenvalues (constant pressure)
  int level = -1;
  std::string pair;
};

/// Discrete inf-sup constant in the energy norm from the dense generalized
/// eigenproblem B A^-1 B^T q = theta MQ q on the reduced velocity space.
InfSupReport measure_inf_sup(const SparseOperator& A, const SparseOperator& B, const SparseOperator& MQ);

struct NormEquivalence {
  double div_norm = 0.0;  ///< ||Pi_h div v|| = sqrt((Bv)^T MQ^-1 (Bv))
  double energy = 0.0;    ///< ||eps(v - P_h v)||
  double upper_slack = 0.0;  ///< sqrt(2) * energy - div_norm
  double lower_slack = 0.0;  ///< div_norm - beta_h * energy

  [[nodiscard]] bool satisfied(double tolerance) const {
    return upper_slack >= -tolerance && lower_slack >= -tolerance;
  }
};

/// Two-sided bound beta_h ||eps(v - P v)|| <= ||Pi_h div v|| <= sqrt(2) ||eps(v - P v)||.
NormEquivalence verify_norm_equivalence(const ReducedSystem& system, const StokesProjector& projector,
                                        const SpdFactorization& pressure_mass, double beta_h, const Vector& v);

} // namespace pfelast

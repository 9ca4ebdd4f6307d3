#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace pfelast::fourier {

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// One Fourier mode of a periodic problem in dimension 2 or 3.
struct FourierMode {
  RealVector xi;
  ComplexVector fhat;
};

/// Pi_xi = xi xi^* / |xi|^2.
RealMatrix projector_symbol(const RealVector& xi);

/// Symbol of the elasticity operator: |xi|^2/2 (I + (2 lambda + 1) Pi_xi).
RealMatrix elasticity_symbol(const RealVector& xi, double lambda);

/// Symbol of the Stokes system [[|xi|^2/2 (I + Pi_xi), xi], [xi^*, 0]].
RealMatrix stokes_symbol(const RealVector& xi);

/// u_lambda = 2|xi|^-2 (I - (2 lambda + 1)/(2 (lambda + 1)) Pi_xi) fhat.
ComplexVector solve_mode_elasticity(const RealVector& xi, double lambda, const ComplexVector& fhat);

struct StokesMode {
  ComplexVector velocity;        ///< 2|xi|^-2 (I - Pi_xi) fhat
  std::complex<double> pressure; ///< |xi|^-2 xi^* fhat
};

StokesMode solve_mode_stokes(const RealVector& xi, const ComplexVector& fhat);

/// Residual of the (d+1)-dimensional Stokes symbol system.
double stokes_residual(const RealVector& xi, const ComplexVector& fhat, const StokesMode& mode);

/// || u_lambda - lambda/(lambda+1) u_inf - 1/(lambda+1) u_0 ||.
double verify_convex_combination(const RealVector& xi, double lambda, const ComplexVector& fhat);

/// || (I + t Pi_xi)(I - t/(t+1) Pi_xi) - I ||_F, t != -1.
double verify_inverse_idempotent(double t, const RealVector& xi);

/// Maximum scaled residuals over a random sweep of modes.
struct SweepResult {
  int samples = 0;
  double convex_combination = 0.0;  ///< scaled by |xi|^2 / ||fhat||
  double inverse_idempotent = 0.0;  ///< scaled by 1 / (1 + |t|)
  double elasticity_consistency = 0.0;  ///< scaled by 1 / ((1 + lambda) ||fhat||)
  double stokes_consistency = 0.0;
  double incompressibility = 0.0;
};

/// Random modes with xi in [-10, 10]^d \ {0}, complex fhat, lambda log-uniform
/// in [1e-3, 1e8] (plus lambda = 0), t uniform in [-0.99, 1e6].
SweepResult run_sweep(std::uint64_t seed, int samples, int dimension);

} // namespace pfelast::fourier

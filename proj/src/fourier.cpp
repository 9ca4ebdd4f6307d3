#include "pfelast/fourier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pfelast::fourier {

namespace {

double squared_norm_checked(const RealVector& xi) {
  const double s = xi.squaredNorm();
  if (!(s > 0.0)) throw std::invalid_argument("fourier: zero frequency");
  return s;
}

RealMatrix identity(const RealVector& xi) { return RealMatrix::Identity(xi.size(), xi.size()); }

} // namespace

RealMatrix projector_symbol(const RealVector& xi) {
  return xi * xi.transpose() / squared_norm_checked(xi);
}

RealMatrix elasticity_symbol(const RealVector& xi, double lambda) {
  const double s = squared_norm_checked(xi);
  return 0.5 * s * (identity(xi) + (2.0 * lambda + 1.0) * projector_symbol(xi));
}

RealMatrix stokes_symbol(const RealVector& xi) {
  const auto d = xi.size();
  RealMatrix K = RealMatrix::Zero(d + 1, d + 1);
  K.topLeftCorner(d, d) = elasticity_symbol(xi, 0.0);
  K.topRightCorner(d, 1) = xi;
  K.bottomLeftCorner(1, d) = xi.transpose();
  return K;
}

ComplexVector solve_mode_elasticity(const RealVector& xi, double lambda, const ComplexVector& fhat) {
  const double s = squared_norm_checked(xi);
  const double weight = (2.0 * lambda + 1.0) / (2.0 * (lambda + 1.0));
  const RealMatrix op = (2.0 / s) * (identity(xi) - weight * projector_symbol(xi));
  return op.cast<std::complex<double>>() * fhat;
}

StokesMode solve_mode_stokes(const RealVector& xi, const ComplexVector& fhat) {
  const double s = squared_norm_checked(xi);
  const RealMatrix op = (2.0 / s) * (identity(xi) - projector_symbol(xi));
  StokesMode mode;
  mode.velocity = op.cast<std::complex<double>>() * fhat;
  mode.pressure = xi.cast<std::complex<double>>().dot(fhat) / s;
  return mode;
}

double stokes_residual(const RealVector& xi, const ComplexVector& fhat, const StokesMode& mode) {
  const auto d = xi.size();
  ComplexVector unknown(d + 1), data = ComplexVector::Zero(d + 1);
  unknown.head(d) = mode.velocity;
  unknown[d] = mode.pressure;
  data.head(d) = fhat;
  return (stokes_symbol(xi).cast<std::complex<double>>() * unknown - data).norm();
}

double verify_convex_combination(const RealVector& xi, double lambda, const ComplexVector& fhat) {
  const ComplexVector u_lambda = solve_mode_elasticity(xi, lambda, fhat);
  const ComplexVector u_zero = solve_mode_elasticity(xi, 0.0, fhat);
  const ComplexVector u_inf = solve_mode_stokes(xi, fhat).velocity;
  return (u_lambda - (lambda / (lambda + 1.0)) * u_inf - (1.0 / (lambda + 1.0)) * u_zero).norm();
}

double verify_inverse_idempotent(double t, const RealVector& xi) {
  if (t == -1.0) throw std::invalid_argument("verify_inverse_idempotent: t = -1 is excluded");
  const RealMatrix pi = projector_symbol(xi);
  const RealMatrix id = identity(xi);
  return ((id + t * pi) * (id - (t / (t + 1.0)) * pi) - id).norm();
}

SweepResult run_sweep(std::uint64_t seed, int samples, int dimension) {
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("run_sweep: dimension must be 2 or 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> log_lambda(-3.0, 8.0);
  std::uniform_real_distribution<double> t_dist(-0.99, 1e6);
  SweepResult out;
  out.samples = samples;
  for (int k = 0; k < samples; ++k) {
    RealVector xi(dimension);
    do {
      for (auto& c : xi) c = coord(rng);
    } while (xi.norm() < 1e-3);
    ComplexVector fhat(dimension);
    for (auto& c : fhat) c = {coord(rng), coord(rng)};
    const double lambda = k == 0 ? 0.0 : std::pow(10.0, log_lambda(rng));
    const double t = t_dist(rng);

    const double scale = fhat.norm() / xi.squaredNorm();
    out.convex_combination = std::max(out.convex_combination, verify_convex_combination(xi, lambda, fhat) / scale);
    out.inverse_idempotent = std::max(out.inverse_idempotent, verify_inverse_idempotent(t, xi) / (1.0 + std::abs(t)));

    const ComplexVector u = solve_mode_elasticity(xi, lambda, fhat);
    const double symbol_scale = fhat.norm();
    // The symbol has norm of order (1 + lambda) |xi|^2, so rounding in S u grows with lambda.
    out.elasticity_consistency = std::max(
        out.elasticity_consistency,
        (elasticity_symbol(xi, lambda).cast<std::complex<double>>() * u - fhat).norm() / ((1.0 + lambda) * symbol_scale));
    const StokesMode mode = solve_mode_stokes(xi, fhat);
    out.stokes_consistency = std::max(out.stokes_consistency, stokes_residual(xi, fhat, mode) / symbol_scale);
    out.incompressibility = std::max(out.incompressibility,
                                     std::abs(xi.cast<std::complex<double>>().dot(mode.velocity)) / (scale * xi.norm()));
  }
  return out;
}

} // namespace pfelast::fourier

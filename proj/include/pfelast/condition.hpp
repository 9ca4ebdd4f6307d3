#pragma once

#include "pfelast/pcg.hpp"
#include "pfelast/preconditioner.hpp"

#include <cstdint>

namespace pfelast {

/// Largest dimension handled by the dense verification paths.
inline constexpr int kDenseLimit = 2000;

/// Ratio of extreme eigenvalues of the Lanczos tridiagonal of a PCG run.
double estimate_condition(const SolveReport& report);

struct LanczosResult {
  Vector diag;
  Vector offdiag;
  int steps = 0;
};

/// Lanczos for M*op in the op inner product, with full
/// reorthogonalization, started from M*start (the PCG Krylov space).
/// When that space becomes invariant the process restarts from a seeded
/// random vector and the tridiagonal gets a zero coupling.
LanczosResult preconditioned_lanczos(const LinearMap& op, const LinearMap& preconditioner, const Vector& start,
                                     int max_steps, std::uint64_t seed = 2024);

double condition_of(const LanczosResult& lanczos);

/// Condition estimate of M*op. Short PCG runs (fewer than `short_run`
/// iterations) give crude Lanczos data, so the Krylov process is rerun
/// from the same right-hand side, ignoring convergence, for up to
/// `max_steps` reorthogonalized steps.
double estimate_condition(const SolveReport& report, const LinearMap& op, const LinearMap& preconditioner,
                          const Vector& rhs, int short_run = 10, int max_steps = 30);

/// Columns of a linear map applied to unit vectors.
DenseMatrix dense_operator(const LinearMap& map, int size);

/// All eigenvalues (ascending) of M A_lambda by dense eigensolve.
Vector dense_preconditioned_spectrum(const ReducedSystem& system, const Preconditioner& preconditioner);

} // namespace pfelast

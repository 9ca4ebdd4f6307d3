#pragma once

#include "pfelast/fourier.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pfelast {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationSummary {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_passed() const;
};

/// Fourier identities in two and three dimensions; every residual must be
/// at most 1e-12.
VerificationSummary run_fourier_check(std::uint64_t seed, int samples = 1000);

/// Fourier sweeps, projection idempotency and divergence, inf-sup,
/// norm equivalence, dense-versus-Lanczos spectra, the closed-form
/// inverse of the preconditioner and its symmetry, on small meshes.
VerificationSummary run_verification_suite(std::uint64_t seed);

} // namespace pfelast

#include "pfelast/verification.hpp"

#include "pfelast/bench.hpp"
#include "pfelast/condition.hpp"
#include "pfelast/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace pfelast {

namespace {

constexpr double kFourierTolerance = 1e-12;
constexpr double kProjectionTolerance = 1e-10;
constexpr double kNormTolerance = 1e-8;
constexpr double kSpectrumTolerance = 0.05;
constexpr double kInverseTolerance = 1e-8;

std::string describe(const char* label, double value, double bound) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s = %.3e (bound %.1e)", label, value, bound);
  return buf;
}

Vector random_vector(int size, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(size);
  for (int i = 0; i < size; ++i) v[i] = normal(rng);
  return v;
}

double energy_norm(const SparseOperator& A, const Vector& v) { return std::sqrt(std::max(0.0, v.dot(A * v))); }

struct Fixture {
  ElementPair pair;
  int level;
  ReducedSystem system;
  InnerSolvers solvers;

  [[nodiscard]] std::string tag() const { return to_string(pair) + " L=" + std::to_string(level); }
};

Fixture make_fixture(ElementPair pair, int level) {
  const auto problem = ManufacturedProblem::trigonometric();
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(level));
  auto system = apply_dirichlet(assemble_system(mesh, pressure_kind(pair), problem), problem);
  auto solvers = make_inner_solvers(system);
  return {pair, level, std::move(system), std::move(solvers)};
}

void add(VerificationSummary& summary, std::string name, bool passed, std::string detail) {
  summary.checks.push_back({std::move(name), passed, std::move(detail)});
}

void check_projection(VerificationSummary& summary, const Fixture& f, std::mt19937_64& rng) {
  const auto& projector = *f.solvers.stokes;
  const SpdFactorization pressure_mass(f.system.MQ);
  double idempotency = 0.0;
  double divergence = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Vector v = random_vector(f.system.size(), rng);
    const double scale = energy_norm(f.system.A, v);
    const Vector pv = projector.project(v);
    idempotency = std::max(idempotency, energy_norm(f.system.A, projector.project(pv) - pv) / scale);
    const Vector div = f.system.B * pv;
    divergence = std::max(divergence, std::sqrt(std::max(0.0, div.dot(pressure_mass.solve(div)))) / scale);
  }
  add(summary, "projection idempotent " + f.tag(), idempotency <= kProjectionTolerance,
      describe("max ||P(Pv) - Pv||_A / ||v||_A", idempotency, kProjectionTolerance));
  add(summary, "projection divergence-free " + f.tag(), divergence <= kProjectionTolerance,
      describe("max ||B Pv||_MQ^-1 / ||v||_A", divergence, kProjectionTolerance));
}

double check_inf_sup(VerificationSummary& summary, const Fixture& f) {
  const auto report = measure_inf_sup(f.system.A, f.system.B, f.system.MQ);
  const bool ok = report.beta_h > 0.0 && report.theta_max <= 2.0 + kNormTolerance && report.null_modes == 1;
  char buf[160];
  std::snprintf(buf, sizeof buf, "beta_h = %.4f, theta_max = %.4f, null modes = %d", report.beta_h,
                report.theta_max, report.null_modes);
  add(summary, "inf-sup " + f.tag(), ok, buf);
  return report.beta_h;
}

void check_norm_equivalence(VerificationSummary& summary, const Fixture& f, double beta_h, std::mt19937_64& rng) {
  const SpdFactorization pressure_mass(f.system.MQ);
  bool ok = true;
  double lo = INFINITY;
  double hi = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Vector v = random_vector(f.system.size(), rng);
    const auto eq = verify_norm_equivalence(f.system, *f.solvers.stokes, pressure_mass, beta_h, v);
    const double ratio = eq.div_norm / eq.energy;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    ok = ok && ratio >= beta_h - kNormTolerance && ratio <= std::sqrt(2.0) + kNormTolerance;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "ratio in [%.4f, %.4f], required [%.4f, %.4f]", lo, hi, beta_h, std::sqrt(2.0));
  add(summary, "norm equivalence " + f.tag(), ok, buf);
}

void check_spectrum(VerificationSummary& summary, const Fixture& f) {
  const auto problem = ManufacturedProblem::trigonometric();
  double worst = 0.0;
  for (double nu : ExperimentConfig{}.nu_values) {
    const double lambda = MaterialParameters::from_nu(nu).lambda;
    const Preconditioner preconditioner(lambda, f.solvers);
    const LinearMap op = [&](const Vector& v) { return f.system.apply_lambda(lambda, v); };
    const LinearMap pc = [&](const Vector& g) { return preconditioner.apply(g); };
    const Vector rhs = f.system.rhs(lambda);
    const auto solved = pcg_solve(op, rhs, pc);
    const double lanczos = estimate_condition(solved.report, op, pc, rhs);
    const Vector spectrum = dense_preconditioned_spectrum(f.system, preconditioner);
    const double dense = spectrum[spectrum.size() - 1] / spectrum[0];
    worst = std::max(worst, std::abs(lanczos - dense) / dense);
  }
  add(summary, "dense spectrum matches Lanczos " + f.tag(), worst <= kSpectrumTolerance,
      describe("max relative gap", worst, kSpectrumTolerance));
}

void check_inverse(VerificationSummary& summary, const Fixture& f, std::mt19937_64& rng) {
  const auto& A = f.system.A;
  double worst = 0.0;
  double asymmetry = 0.0;
  for (double lambda : {0.0, 1.0, 1e2, 1e4, 1e6}) {
    const Preconditioner preconditioner(lambda, f.solvers);
    const Vector g = random_vector(f.system.size(), rng);
    const Vector h = random_vector(f.system.size(), rng);
    const Vector v = preconditioner.apply(g);
    // M^-1 = A + lambda A (I - P).
    const Vector recovered = A * v + lambda * (A * (v - f.solvers.stokes->project(v)));
    // Cancellation between the two summands bounds the attainable accuracy.
    worst = std::max(worst, (recovered - g).norm() / (g.norm() + lambda * (A * v).norm()));
    const Vector mh = preconditioner.apply(h);
    const double scale = std::sqrt(g.dot(v) * h.dot(mh));
    asymmetry = std::max(asymmetry, std::abs(h.dot(v) - g.dot(mh)) / scale);
  }
  add(summary, "closed-form inverse " + f.tag(), worst <= kInverseTolerance,
      describe("max ||(A + lambda A(I - P)) M g - g|| / (||g|| + lambda ||A M g||)", worst, kInverseTolerance));
  add(summary, "preconditioner symmetric " + f.tag(), asymmetry <= kInverseTolerance,
      describe("max relative |h.Mg - g.Mh|", asymmetry, kInverseTolerance));
}

} // namespace

bool VerificationSummary::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationSummary run_fourier_check(std::uint64_t seed, int samples) {
  VerificationSummary summary;
  for (int dim : {2, 3}) {
    const auto sweep = fourier::run_sweep(seed + static_cast<std::uint64_t>(dim), samples, dim);
    const std::string suffix = " d=" + std::to_string(dim);
    const auto entry = [&](const char* name, double value) {
      add(summary, std::string(name) + suffix, value <= kFourierTolerance,
          describe("max residual", value, kFourierTolerance));
    };
    entry("convex combination", sweep.convex_combination);
    entry("inverse idempotent", sweep.inverse_idempotent);
    entry("elasticity mode solve", sweep.elasticity_consistency);
    entry("stokes mode solve", sweep.stokes_consistency);
    entry("incompressibility", sweep.incompressibility);
  }
  return summary;
}

VerificationSummary run_verification_suite(std::uint64_t seed) {
  VerificationSummary summary = run_fourier_check(seed);
  std::mt19937_64 rng(seed);
  for (ElementPair pair : {ElementPair::P2P0, ElementPair::P2P1}) {
    for (int level : {2, 3}) {
      const Fixture f = make_fixture(pair, level);
      check_projection(summary, f, rng);
      const double beta_h = check_inf_sup(summary, f);
      check_norm_equivalence(summary, f, beta_h, rng);
      if (level == 2) {
        check_spectrum(summary, f);
        check_inverse(summary, f, rng);
      }
    }
  }
  return summary;
}

} // namespace pfelast

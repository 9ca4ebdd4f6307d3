#pragma once

#include "pfelast/assembly.hpp"
#include "pfelast/pcg.hpp"
#include "pfelast/projector.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pfelast {

inline constexpr const char* kVersion = "0.1.0";

enum class ElementPair { P2P0, P2P1 };

std::string to_string(ElementPair pair);       ///< "P2xP0" / "P2xP1"
std::string cli_name(ElementPair pair);        ///< "p2p0" / "p2p1"
ElementPair parse_element_pair(const std::string& name);
ElementKind pressure_kind(ElementPair pair);

enum class ReportFormat { Markdown, Csv, Json };

ReportFormat parse_report_format(const std::string& name);

/// Invalid experiment configuration (distinct from solver failures).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::vector<ElementPair> pairs{ElementPair::P2P0, ElementPair::P2P1};
  std::vector<int> levels{2, 3, 4, 5};
  std::vector<double> nu_values{0.25, 0.4, 0.49, 0.499, 0.4999};
  double tolerance = 1e-6;
  ReportFormat format = ReportFormat::Markdown;
  std::uint64_t seed = 0;
  /// Levels above this are rejected; L = 6 is opt-in.
  int max_level = 5;
  StoppingRule stopping_rule = StoppingRule::TrueResidual;
  InnerSolverKind inner_solver = InnerSolverKind::Direct;

  /// Throws ConfigError.
  void validate() const;
};

struct CellResult {
  ElementPair pair = ElementPair::P2P0;
  int level = 0;
  double nu = 0.0;
  double lambda = 0.0;
  bool ok = false;
  std::string error;
  int iterations = 0;
  double condition = 0.0;
  ErrorNorms errors;
  std::vector<double> residual_history;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct BenchResult {
  ExperimentConfig config;
  std::string version = kVersion;
  std::vector<CellResult> cells;

  [[nodiscard]] const CellResult* find(ElementPair pair, int level, double nu) const;
  [[nodiscard]] bool all_ok() const;
};

/// Assembles, applies boundary data, builds the preconditioner and runs
/// PCG for every (pair, level, nu). Failures are recorded per cell.
BenchResult run_table_experiment(const ExperimentConfig& config);

/// Markdown (two tables per pair), CSV (one record per cell) or JSON
/// (everything, including residual histories and wall times). Markdown and
/// CSV exclude timings so that they are reproducible byte for byte.
std::string emit_report(const BenchResult& result, ReportFormat format);

/// Inverse of the JSON report.
BenchResult parse_json_report(const std::string& text);

} // namespace pfelast

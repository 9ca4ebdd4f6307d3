#include "pfelast/bench.hpp"

#include "pfelast/condition.hpp"
#include "pfelast/preconditioner.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

namespace pfelast {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

std::string nu_label(double nu) { return format_double("%g", nu); }

} // namespace

std::string to_string(ElementPair pair) { return pair == ElementPair::P2P0 ? "P2xP0" : "P2xP1"; }

std::string cli_name(ElementPair pair) { return pair == ElementPair::P2P0 ? "p2p0" : "p2p1"; }

ElementPair parse_element_pair(const std::string& name) {
  if (name == "p2p0" || name == "P2xP0") return ElementPair::P2P0;
  if (name == "p2p1" || name == "P2xP1") return ElementPair::P2P1;
  throw ConfigError("unknown element pair '" + name + "' (expected p2p0 or p2p1)");
}

ElementKind pressure_kind(ElementPair pair) {
  return pair == ElementPair::P2P0 ? ElementKind::P0 : ElementKind::P1;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "md" || name == "markdown") return ReportFormat::Markdown;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ConfigError("unknown report format '" + name + "' (expected md, csv or json)");
}

void ExperimentConfig::validate() const {
  if (pairs.empty()) throw ConfigError("no element pair selected");
  if (levels.empty()) throw ConfigError("no refinement level selected");
  if (nu_values.empty()) throw ConfigError("no Poisson ratio selected");
  if (max_level < 0 || max_level > kMaxMeshLevel)
    throw ConfigError("max level guard must lie in [0, " + std::to_string(kMaxMeshLevel) + "]");
  for (int level : levels) {
    if (level < 0 || level > max_level)
      throw ConfigError("level " + std::to_string(level) + " outside [0, " + std::to_string(max_level) +
                        "]; raise --max-level-guard to opt in");
  }
  for (double nu : nu_values) {
    if (!(nu >= 0.0 && nu < 0.5)) throw ConfigError("Poisson ratio " + nu_label(nu) + " outside [0, 0.5)");
  }
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw ConfigError("tolerance must lie in (0, 1)");
}

const CellResult* BenchResult::find(ElementPair pair, int level, double nu) const {
  for (const auto& cell : cells)
    if (cell.pair == pair && cell.level == level && cell.nu == nu) return &cell;
  return nullptr;
}

bool BenchResult::all_ok() const {
  for (const auto& cell : cells)
    if (!cell.ok) return false;
  return true;
}

BenchResult run_table_experiment(const ExperimentConfig& config) {
  config.validate();
  BenchResult result;
  result.config = config;
  const auto problem = ManufacturedProblem::trigonometric();
  InnerSolverOptions inner;
  inner.kind = config.inner_solver;

  for (ElementPair pair : config.pairs) {
    for (int level : config.levels) {
      const auto setup_start = Clock::now();
      std::optional<ReducedSystem> system;
      InnerSolvers solvers;
      std::string setup_error;
      try {
        auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(level));
        system.emplace(apply_dirichlet(assemble_system(mesh, pressure_kind(pair), problem), problem));
        solvers = make_inner_solvers(*system, inner);
      } catch (const std::exception& e) {
        setup_error = e.what();
      }
      const double setup_seconds = seconds_since(setup_start);

      for (double nu : config.nu_values) {
        CellResult cell;
        cell.pair = pair;
        cell.level = level;
        cell.nu = nu;
        cell.lambda = MaterialParameters::from_nu(nu).lambda;
        cell.setup_seconds = setup_seconds;
        if (!setup_error.empty()) {
          cell.error = setup_error;
          result.cells.push_back(std::move(cell));
          continue;
        }
        const auto solve_start = Clock::now();
        try {
          const Preconditioner preconditioner(cell.lambda, solvers);
          const LinearMap op = [&](const Vector& v) { return system->apply_lambda(cell.lambda, v); };
          const LinearMap pc = [&](const Vector& g) { return preconditioner.apply(g); };
          const Vector rhs = system->rhs(cell.lambda);
          PcgOptions options;
          options.tolerance = config.tolerance;
          options.rule = config.stopping_rule;
          const auto solved = pcg_solve(op, rhs, pc, options);
          cell.iterations = solved.report.iterations;
          cell.residual_history = solved.report.residual_history;
          cell.condition = estimate_condition(solved.report, op, pc, rhs);
          cell.errors = compute_errors(system->expand(solved.solution), *system->velocity, problem);
          cell.ok = true;
        } catch (const PcgDidNotConverge& e) {
          cell.error = e.what();
          cell.iterations = e.report().iterations;
          cell.residual_history = e.report().residual_history;
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
        cell.solve_seconds = seconds_since(solve_start);
        result.cells.push_back(std::move(cell));
      }
    }
  }
  return result;
}

namespace {

std::string markdown_table(const BenchResult& result, ElementPair pair, bool iterations) {
  std::ostringstream out;
  const auto& cfg = result.config;
  out << "### " << (iterations ? "Number of iterations for " : "Condition number of M_lambda A_lambda for ")
      << to_string(pair) << "\n\n";
  out << "| h=2^-L |";
  for (double nu : cfg.nu_values) out << " ν = " << nu_label(nu) << " |";
  out << "\n|---|";
  for (std::size_t k = 0; k < cfg.nu_values.size(); ++k) out << "---|";
  out << '\n';
  for (int level : cfg.levels) {
    out << "| L=" << level << " |";
    for (double nu : cfg.nu_values) {
      const CellResult* cell = result.find(pair, level, nu);
      if (!cell || !cell->ok) {
        out << " fail |";
      } else if (iterations) {
        out << ' ' << cell->iterations << " |";
      } else {
        out << ' ' << format_double("%.2f", cell->condition) << " |";
      }
    }
    out << '\n';
  }
  out << '\n';
  return out.str();
}

std::string emit_markdown(const BenchResult& result) {
  std::string out;
  for (ElementPair pair : result.config.pairs) {
    out += markdown_table(result, pair, true);
    out += markdown_table(result, pair, false);
  }
  return out;
}

std::string emit_csv(const BenchResult& result) {
  std::ostringstream out;
  out << "pair,level,nu,lambda,iterations,condition,l2_error,h1_error,status\n";
  for (const auto& c : result.cells) {
    out << to_string(c.pair) << ',' << c.level << ',' << nu_label(c.nu) << ','
        << format_double("%.10g", c.lambda) << ',' << c.iterations << ','
        << format_double("%.6f", c.condition) << ',' << format_double("%.6e", c.errors.l2) << ','
        << format_double("%.6e", c.errors.h1_seminorm) << ',' << (c.ok ? "ok" : "failed") << '\n';
  }
  return out.str();
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  std::vector<std::string> pairs;
  for (auto p : cfg.pairs) pairs.push_back(cli_name(p));
  j["pairs"] = pairs;
  j["levels"] = cfg.levels;
  j["nu_values"] = cfg.nu_values;
  j["tolerance"] = cfg.tolerance;
  j["seed"] = cfg.seed;
  j["max_level"] = cfg.max_level;
  j["stopping_rule"] = cfg.stopping_rule == StoppingRule::TrueResidual ? "true_residual" : "preconditioned_residual";
  j["inner_solver"] = cfg.inner_solver == InnerSolverKind::Direct ? "direct" : "cg";
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.pairs.clear();
  for (const auto& p : j.at("pairs")) cfg.pairs.push_back(parse_element_pair(p.get<std::string>()));
  cfg.levels = j.at("levels").get<std::vector<int>>();
  cfg.nu_values = j.at("nu_values").get<std::vector<double>>();
  cfg.tolerance = j.at("tolerance").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.max_level = j.at("max_level").get<int>();
  cfg.stopping_rule = j.at("stopping_rule") == "true_residual" ? StoppingRule::TrueResidual
                                                                : StoppingRule::PreconditionedResidual;
  cfg.inner_solver = j.at("inner_solver") == "direct" ? InnerSolverKind::Direct : InnerSolverKind::ConjugateGradient;
  cfg.format = ReportFormat::Json;
  return cfg;
}

std::string emit_json(const BenchResult& result) {
  nlohmann::json j;
  j["version"] = result.version;
  j["config"] = config_to_json(result.config);
  j["cells"] = nlohmann::json::array();
  for (const auto& c : result.cells) {
    j["cells"].push_back({{"pair", cli_name(c.pair)},
                          {"level", c.level},
                          {"nu", c.nu},
                          {"lambda", c.lambda},
                          {"ok", c.ok},
                          {"error", c.error},
                          {"iterations", c.iterations},
                          {"condition", c.condition},
                          {"l2_error", c.errors.l2},
                          {"h1_error", c.errors.h1_seminorm},
                          {"residual_history", c.residual_history},
                          {"setup_seconds", c.setup_seconds},
                          {"solve_seconds", c.solve_seconds}});
  }
  return j.dump(2) + "\n";
}

} // namespace

std::string emit_report(const BenchResult& result, ReportFormat format) {
  switch (format) {
  case ReportFormat::Markdown: return emit_markdown(result);
  case ReportFormat::Csv: return emit_csv(result);
  case ReportFormat::Json: return emit_json(result);
  }
  return {};
}

BenchResult parse_json_report(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  BenchResult result;
  result.version = j.at("version").get<std::string>();
  result.config = config_from_json(j.at("config"));
  for (const auto& c : j.at("cells")) {
    CellResult cell;
    cell.pair = parse_element_pair(c.at("pair").get<std::string>());
    cell.level = c.at("level").get<int>();
    cell.nu = c.at("nu").get<double>();
    cell.lambda = c.at("lambda").get<double>();
    cell.ok = c.at("ok").get<bool>();
    cell.error = c.at("error").get<std::string>();
    cell.iterations = c.at("iterations").get<int>();
    cell.condition = c.at("condition").get<double>();
    cell.errors.l2 = c.at("l2_error").get<double>();
    cell.errors.h1_seminorm = c.at("h1_error").get<double>();
    cell.residual_history = c.at("residual_history").get<std::vector<double>>();
    cell.setup_seconds = c.at("setup_seconds").get<double>();
    cell.solve_seconds = c.at("solve_seconds").get<double>();
    result.cells.push_back(std::move(cell));
  }
  return result;
}

} // namespace pfelast

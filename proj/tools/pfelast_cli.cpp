#include "pfelast/bench.hpp"
#include "pfelast/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kSolverFailure = 3, kVerificationFailure = 4 };

std::vector<int> parse_levels(const std::string& text) {
  using pfelast::ConfigError;
  std::vector<int> levels;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const int first = std::stoi(text.substr(0, dots));
      const int last = std::stoi(text.substr(dots + 2));
      if (last < first) throw ConfigError("empty level range '" + text + "'");
      for (int l = first; l <= last; ++l) levels.push_back(l);
      return levels;
    }
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) levels.push_back(std::stoi(item));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError("cannot parse levels '" + text + "'");
  }
  return levels;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw pfelast::ConfigError("cannot parse number '" + item + "'");
    values.push_back(value);
  }
  return values;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw pfelast::ConfigError("cannot open output file '" + path + "'");
  out << text;
}

std::string format_summary(const pfelast::VerificationSummary& summary) {
  std::string text;
  for (const auto& check : summary.checks)
    text += std::string(check.passed ? "PASS " : "FAIL ") + check.name + ": " + check.detail + "\n";
  return text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter-free preconditioner for nearly incompressible elasticity"};
  app.set_version_flag("--version", std::string(pfelast::kVersion));
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 0;

  auto* bench = app.add_subcommand("bench", "Iteration counts and condition numbers over (pair, level, nu)");
  std::vector<std::string> pairs{"p2p0", "p2p1"};
  std::string levels = "2..5";
  std::string nus = "0.25,0.4,0.49,0.499,0.4999";
  double tolerance = 1e-6;
  std::string format = "md";
  int max_level = 5;
  std::string stopping = "true";
  std::string inner = "direct";
  bench->add_option("--pair", pairs, "Element pairs (p2p0, p2p1)")->delimiter(',');
  bench->add_option("--levels", levels, "Refinement levels, '2..5' or '2,3,4'");
  bench->add_option("--nu", nus, "Comma-separated Poisson ratios in [0, 0.5)");
  bench->add_option("--tol", tolerance, "Relative residual tolerance");
  bench->add_option("--format", format, "Report format: md, csv or json");
  bench->add_option("--seed", seed, "Seed (recorded in the report)");
  bench->add_option("--max-level-guard", max_level, "Highest level accepted (L = 6 is opt-in)");
  bench->add_option("--stopping", stopping, "Stopping rule: true or preconditioned residual")
      ->check(CLI::IsMember({"true", "preconditioned"}));
  bench->add_option("--inner", inner, "Inner solvers: direct or cg")->check(CLI::IsMember({"direct", "cg"}));
  bench->add_option("--out", out_path, "Write the report to FILE instead of stdout");

  auto* fourier = app.add_subcommand("fourier-check", "Fourier symbol identities in two and three dimensions");
  int samples = 1000;
  fourier->add_option("--seed", seed, "Sweep seed");
  fourier->add_option("--samples", samples, "Random modes per sweep")->check(CLI::PositiveNumber);
  fourier->add_option("--out", out_path, "Write the summary to FILE instead of stdout");

  auto* verify = app.add_subcommand("verify", "Property suites on small meshes");
  verify->add_option("--seed", seed, "Seed for random inputs");
  verify->add_option("--out", out_path, "Write the summary to FILE instead of stdout");

  auto* mesh_info = app.add_subcommand("mesh-info", "Mesh and space sizes for a level");
  int mesh_level = 2;
  std::string dump_path;
  mesh_info->add_option("--level", mesh_level, "Refinement level")->required();
  mesh_info->add_option("--dump", dump_path, "Write vertices and cells to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*bench) {
      pfelast::ExperimentConfig config;
      config.pairs.clear();
      for (const auto& p : pairs) config.pairs.push_back(pfelast::parse_element_pair(p));
      config.levels = parse_levels(levels);
      config.nu_values = parse_reals(nus);
      config.tolerance = tolerance;
      config.format = pfelast::parse_report_format(format);
      config.seed = seed;
      config.max_level = max_level;
      config.stopping_rule =
          stopping == "true" ? pfelast::StoppingRule::TrueResidual : pfelast::StoppingRule::PreconditionedResidual;
      config.inner_solver =
          inner == "direct" ? pfelast::InnerSolverKind::Direct : pfelast::InnerSolverKind::ConjugateGradient;
      config.validate();
      const auto result = pfelast::run_table_experiment(config);
      write_output(pfelast::emit_report(result, config.format), out_path);
      for (const auto& cell : result.cells) {
        if (!cell.ok)
          std::cerr << "failed: " << pfelast::to_string(cell.pair) << " L=" << cell.level << " nu=" << cell.nu
                    << ": " << cell.error << '\n';
      }
      return result.all_ok() ? kOk : kSolverFailure;
    }
    if (*fourier || *verify) {
      const auto summary = *fourier ? pfelast::run_fourier_check(seed, samples) : pfelast::run_verification_suite(seed);
      write_output(format_summary(summary), out_path);
      return summary.all_passed() ? kOk : kVerificationFailure;
    }
    if (*mesh_info) {
      if (mesh_level < 0 || mesh_level > pfelast::kMaxMeshLevel)
        throw pfelast::ConfigError("level outside [0, " + std::to_string(pfelast::kMaxMeshLevel) + "]");
      auto mesh = std::make_shared<const pfelast::Mesh>(pfelast::build_uniform_mesh(mesh_level));
      int boundary_vertices = 0;
      int boundary_edges = 0;
      for (bool b : mesh->boundary_vertex) boundary_vertices += b;
      for (bool b : mesh->boundary_edge) boundary_edges += b;
      std::printf("level %d, h = %g\n", mesh_level, mesh->h());
      std::printf("vertices %d (boundary %d), edges %d (boundary %d), cells %d\n", mesh->num_vertices(),
                  boundary_vertices, mesh->num_edges(), boundary_edges, mesh->num_cells());
      for (auto kind : {pfelast::ElementKind::P2Vector, pfelast::ElementKind::P0, pfelast::ElementKind::P1}) {
        const auto space = pfelast::build_space(mesh, kind);
        std::printf("%s dofs %d\n", pfelast::to_string(kind).c_str(), space.num_dofs());
      }
      if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) throw pfelast::ConfigError("cannot open dump file '" + dump_path + "'");
        pfelast::write_mesh_text(*mesh, out);
      }
      return kOk;
    }
  } catch (const pfelast::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}

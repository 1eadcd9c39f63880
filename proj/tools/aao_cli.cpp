// Experiment runner: one row per invocation (run) or a whole table (suite).
// Emits RFC-4180 style CSV and plain-text eigenvalue dumps.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>

#include "aao/experiment.hpp"

namespace {

int cmd_run(const aao::ExperimentConfig& config) {
  const auto result = aao::run_experiment(config);
  if (config.mode == aao::RunMode::spectrum) {
    const auto& sp = result.spectrum;
    std::printf("spectrum: %zu eigenvalues, epsilon=%g, outliers=%zu, near_zero=%zu\n",
                sp.eigenvalues.size(), sp.epsilon, sp.outliers, sp.near_zero);
    if (!config.out_path.empty())
      std::printf("dump written to %s\n", config.out_path.c_str());
    return 0;
  }
  if (config.out_path.empty())
    std::printf("%s\n%s\n", aao::csv_header().c_str(), aao::csv_line(result.row).c_str());
  else
    std::printf("%s\n", aao::csv_line(result.row).c_str());
  return result.row.converged ? 0 : 2;
}

int cmd_suite(const std::string& table, std::size_t dof_cap, const std::string& out,
              double tol, std::size_t maxit) {
  const auto rows = aao::run_suite(table, dof_cap, out, tol, maxit);
  for (const auto& r : rows) std::printf("%s\n", aao::csv_line(r).c_str());
  std::printf("suite %s: %zu rows%s%s\n", table.c_str(), rows.size(),
              out.empty() ? "" : " -> ", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-at-once block Toeplitz solver experiments"};
  // Key=value config file with [run]/[suite] sections; flags override it.
  app.set_config("--config");
  app.require_subcommand(1);

  aao::ExperimentConfig config;
  std::string equation = "heat", scheme = "theta", precond = "tau", solver = "minres",
              mode = "solve";

  auto* run = app.add_subcommand("run", "Solve one configuration, emit one CSV row");
  run->add_option("--equation", equation)->check(CLI::IsMember({"heat", "wave"}));
  run->add_option("--scheme", scheme)
      ->check(CLI::IsMember({"theta", "bdf2", "wave-two-step", "wave-central"}));
  run->add_option("--theta", config.theta);
  run->add_option("--dim", config.dim)->check(CLI::IsMember({1, 2}));
  run->add_option("--n", config.n)->required();
  run->add_option("--m-plus-1", config.m_plus_1)->required();
  run->add_option("--T", config.T);
  run->add_option("--a", config.a);
  run->add_option("--precond", precond)->check(CLI::IsMember({"none", "circulant", "tau"}));
  run->add_option("--solver", solver)->check(CLI::IsMember({"minres", "cgne"}));
  run->add_option("--tol", config.tol);
  run->add_option("--maxit", config.maxit);
  run->add_option("--mode", mode)->check(CLI::IsMember({"solve", "spectrum"}));
  run->add_option("--epsilon", config.epsilon);
  run->add_option("--out", config.out_path);
  run->add_option("--dense-guard", config.dense_guard);

  std::string table = "T1", suite_out;
  std::size_t dof_cap = std::size_t{1} << 22;
  double suite_tol = 1e-6;
  std::size_t suite_maxit = 500;
  auto* suite = app.add_subcommand("suite", "Run a whole table grid, emit a CSV file");
  suite->add_option("--table", table)
      ->check(CLI::IsMember({"T1", "T2", "T3", "T4", "T5", "T6"}));
  suite->add_option("--max-dof", dof_cap);
  suite->add_option("--out", suite_out);
  suite->add_option("--tol", suite_tol);
  suite->add_option("--maxit", suite_maxit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) {
      config.equation = equation == "heat" ? aao::Equation::heat : aao::Equation::wave;
      config.scheme = aao::scheme_from_string(scheme);
      config.precond = precond == "none"        ? aao::PrecondChoice::none
                       : precond == "circulant" ? aao::PrecondChoice::circulant
                                                : aao::PrecondChoice::tau;
      config.solver =
          solver == "minres" ? aao::SolverChoice::minres : aao::SolverChoice::cgne;
      config.mode = mode == "solve" ? aao::RunMode::solve : aao::RunMode::spectrum;
      return cmd_run(config);
    }
    return cmd_suite(table, dof_cap, suite_out, suite_tol, suite_maxit);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
}

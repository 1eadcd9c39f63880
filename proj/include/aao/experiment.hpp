#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aao/analysis.hpp"
#include "aao/discretize.hpp"
#include "aao/krylov.hpp"

namespace aao {

enum class PrecondChoice { none, circulant, tau };
enum class SolverChoice { minres, cgne };
enum class RunMode { solve, spectrum };

std::string to_string(PrecondChoice p);
std::string to_string(SolverChoice s);

/// One table row of the experiment harness.
struct ExperimentConfig {
  Equation equation = Equation::heat;
  Scheme scheme = Scheme::theta;
  double theta = 0.5;
  int dim = 1;
  std::size_t n = 0;
  std::size_t m_plus_1 = 0;
  double T = 1.0;
  double a = -1.0;  // < 0 picks the example default (1e-5 heat, 1 wave)
  PrecondChoice precond = PrecondChoice::tau;
  SolverChoice solver = SolverChoice::minres;
  double tol = 1e-6;
  std::size_t maxit = 500;
  RunMode mode = RunMode::solve;
  double epsilon = 0.2;  // cluster radius, spectrum mode
  std::string out_path;  // CSV (solve) or eigenvalue dump (spectrum)
  std::size_t dense_guard = 4096;
};

struct ExperimentRow {
  std::string equation, scheme, preconditioner, solver;
  std::size_t n = 0, m_plus_1 = 0, dof = 0;
  std::size_t iterations = 0;
  bool converged = false;
  double final_true_relres = 0.0;
  double wall_time_seconds = 0.0;
};

struct ExperimentResult {
  ExperimentRow row;
  SolveReport report;
  BlockVector solution;          // solve mode
  SpectrumReport spectrum;       // spectrum mode
};

/// Validates the config, builds the problem, solves (or computes the
/// spectrum) and returns the outcome. A singular preconditioner symbol or
/// solver divergence yields a row with converged = false and
/// iterations = maxit. Throws std::invalid_argument on config errors.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Appends one CSV row (writes the header first when the file is empty).
void append_csv_row(const std::string& path, const ExperimentRow& row);
std::string csv_header();
std::string csv_line(const ExperimentRow& row);

/// The (n, m+1, scheme, ...) grid of one paper table, capped by DoF.
std::vector<ExperimentConfig> suite_rows(const std::string& table_id, std::size_t dof_cap);

/// Runs a full table (both preconditioners per grid point), appending rows
/// to out_path as they finish. Per-row failures are recorded in the rows;
/// the suite continues.
std::vector<ExperimentRow> run_suite(const std::string& table_id, std::size_t dof_cap,
                                     const std::string& out_path, double tol = 1e-6,
                                     std::size_t maxit = 500);

}  // namespace aao

#include "aao/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>

namespace aao {

std::string to_string(PrecondChoice p) {
  switch (p) {
    case PrecondChoice::none: return "none";
    case PrecondChoice::circulant: return "circulant";
    case PrecondChoice::tau: return "tau";
  }
  return "?";
}

std::string to_string(SolverChoice s) {
  return s == SolverChoice::minres ? "minres" : "cgne";
}

namespace {

void validate(const ExperimentConfig& c) {
  if (c.m_plus_1 < 2) throw std::invalid_argument("config: m_plus_1 must be >= 2");
  if (c.n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw std::invalid_argument("config: tol must lie in (0,1)");
  if (c.dim != 1 && c.dim != 2) throw std::invalid_argument("config: dim must be 1 or 2");
  if (c.equation == Equation::heat &&
      (c.scheme == Scheme::wave_two_step || c.scheme == Scheme::wave_central))
    throw std::invalid_argument("config: wave schemes require equation=wave");
  if (c.equation == Equation::wave &&
      (c.scheme == Scheme::theta))
    throw std::invalid_argument("config: the theta scheme requires equation=heat");
  if (c.solver == SolverChoice::cgne && c.precond == PrecondChoice::none)
    throw std::invalid_argument("config: cgne needs a circulant or tau preconditioner");
  const std::size_t m = c.dim == 1 ? c.m_plus_1 - 1 : (c.m_plus_1 - 1) * (c.m_plus_1 - 1);
  if (c.mode == RunMode::spectrum && c.n * m > c.dense_guard)
    throw std::invalid_argument("config: spectrum mode requires n*m within the dense guard");
}

ProblemSpec make_problem(const ExperimentConfig& c) {
  ProblemSpec spec;
  spec.equation = c.equation;
  spec.scheme = c.equation == Equation::wave && c.scheme == Scheme::bdf2
                    ? Scheme::wave_two_step
                    : c.scheme;
  spec.theta = c.theta;
  spec.dim = c.dim;
  spec.n = c.n;
  spec.m_plus_1 = c.m_plus_1;
  spec.T = c.T;
  spec.a = c.a;
  apply_example_defaults(spec, /*a_was_set=*/c.a > 0.0);
  return spec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const ProblemSpec spec = make_problem(config);

  auto spatial = std::make_shared<const SpectralSpatialOperator>(
      spec.dim == 1 ? build_laplacian_1d(spec.m1(), spec.a, spec.L)
                    : build_laplacian_2d(spec.m1(), spec.a, spec.L));
  const TimeStencil stencil = make_stencil(spec);
  AllAtOnceOperator op(spatial, stencil, spec.n);

  ExperimentResult result;
  auto& row = result.row;
  row.equation = spec.equation == Equation::heat ? "heat" : "wave";
  row.scheme = to_string(stencil.scheme);
  row.preconditioner = to_string(config.precond);
  row.solver = to_string(config.solver);
  row.n = spec.n;
  row.m_plus_1 = spec.m_plus_1;
  row.dof = spec.n * spec.m_total();

  std::unique_ptr<SpectralPreconditioner> P;
  try {
    if (config.precond == PrecondChoice::tau)
      P = std::make_unique<SpectralPreconditioner>(
          SpectralPreconditioner::build_tau(stencil, *spatial, spec.n));
    else if (config.precond == PrecondChoice::circulant)
      P = std::make_unique<SpectralPreconditioner>(
          SpectralPreconditioner::build_circulant(stencil, *spatial, spec.n));
  } catch (const SingularSymbolError&) {
    row.converged = false;
    row.iterations = config.maxit;
    row.final_true_relres = std::numeric_limits<double>::quiet_NaN();
    if (config.mode == RunMode::solve && !config.out_path.empty())
      append_csv_row(config.out_path, row);
    return result;
  }

  if (config.mode == RunMode::spectrum) {
    result.spectrum = P ? preconditioned_spectrum(op, *P, config.epsilon, config.dense_guard)
                        : plain_spectrum(op, config.epsilon, config.dense_guard);
    if (!config.out_path.empty())
      write_spectrum_dump(config.out_path, result.spectrum.eigenvalues);
    return result;
  }

  const BlockVector f = build_rhs(spec, *spatial, stencil);
  BlockVector b(f.n, f.m);
  if (op.centered())
    b = f;
  else
    flip(f, b);

  try {
    if (config.solver == SolverChoice::minres) {
      LinOp apply_A = [&op](const BlockVector& x, BlockVector& y) { op.sym_matvec(x, y); };
      LinOp apply_M;
      if (P)
        apply_M = [&P](const BlockVector& x, BlockVector& y) { P->apply_inverse(x, y); };
      else
        apply_M = [](const BlockVector& x, BlockVector& y) { y = x; };
      result.report = minres(apply_A, apply_M, b, result.solution, config.tol, config.maxit);
    } else {
      result.report = cgne(op, *P, f, result.solution, config.tol, config.maxit);
    }
    row.iterations = result.report.iterations;
    row.converged = result.report.converged;
    row.final_true_relres = result.report.final_true_relres;
    row.wall_time_seconds = result.report.wall_time_seconds;
  } catch (const std::runtime_error&) {
    row.converged = false;
    row.iterations = config.maxit;
    row.final_true_relres = std::numeric_limits<double>::quiet_NaN();
  }

  if (!config.out_path.empty()) append_csv_row(config.out_path, row);
  return result;
}

std::string csv_header() {
  return "equation,scheme,n,m_plus_1,dof,preconditioner,solver,iterations,"
         "converged,final_true_relres,wall_time_seconds";
}

std::string csv_line(const ExperimentRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%zu,%zu,%s,%s,%zu,%s,%.6e,%.3f",
                r.equation.c_str(), r.scheme.c_str(), r.n, r.m_plus_1, r.dof,
                r.preconditioner.c_str(), r.solver.c_str(), r.iterations,
                r.converged ? "true" : "false", r.final_true_relres, r.wall_time_seconds);
  return buf;
}

void append_csv_row(const std::string& path, const ExperimentRow& row) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("append_csv_row: cannot open " + path);
  if (fresh) out << csv_header() << "\n";
  out << csv_line(row) << "\n";
}

std::vector<ExperimentConfig> suite_rows(const std::string& table_id, std::size_t dof_cap) {
  ExperimentConfig base;
  std::vector<std::pair<std::size_t, std::size_t>> grid;  // (n, m_plus_1)
  auto paired = [&](int lo, int hi) {
    for (int k = lo; k <= hi; ++k)
      grid.emplace_back(std::size_t{1} << k, std::size_t{1} << k);
  };
  if (table_id == "T1" || table_id == "T2") {
    base.equation = Equation::heat;
    base.dim = 1;
    base.scheme = table_id == "T1" ? Scheme::theta : Scheme::bdf2;
    base.theta = 0.5;
    for (int p = 8; p <= 11; ++p)
      for (int q = 8; q <= 11; ++q)
        grid.emplace_back(std::size_t{1} << p, std::size_t{1} << q);
  } else if (table_id == "T3" || table_id == "T4") {
    base.equation = Equation::heat;
    base.dim = 2;
    base.scheme = table_id == "T3" ? Scheme::theta : Scheme::bdf2;
    base.theta = 1.0;
    paired(5, 8);
  } else if (table_id == "T5" || table_id == "T6") {
    base.equation = Equation::wave;
    base.dim = 1;
    base.scheme = table_id == "T5" ? Scheme::wave_two_step : Scheme::wave_central;
    paired(7, 10);
  } else {
    throw std::invalid_argument("suite_rows: unknown table id " + table_id);
  }

  std::vector<ExperimentConfig> rows;
  for (auto [n, mp1] : grid) {
    const std::size_t m1 = mp1 - 1;
    const std::size_t dof = n * (base.dim == 1 ? m1 : m1 * m1);
    if (dof > dof_cap) continue;
    for (PrecondChoice pc : {PrecondChoice::circulant, PrecondChoice::tau}) {
      ExperimentConfig c = base;
      c.n = n;
      c.m_plus_1 = mp1;
      c.precond = pc;
      rows.push_back(c);
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_suite(const std::string& table_id, std::size_t dof_cap,
                                     const std::string& out_path, double tol,
                                     std::size_t maxit) {
  std::vector<ExperimentRow> rows;
  for (ExperimentConfig c : suite_rows(table_id, dof_cap)) {
    c.tol = tol;
    c.maxit = maxit;
    c.out_path = out_path;
    rows.push_back(run_experiment(c).row);
  }
  return rows;
}

}  // namespace aao

#include "aao/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace aao {

namespace {

SpectrumReport cluster_stats(std::vector<double> eigs, double epsilon) {
  std::sort(eigs.begin(), eigs.end());
  SpectrumReport rep;
  rep.epsilon = epsilon;
  for (double ev : eigs) {
    if (std::min(std::abs(ev - 1.0), std::abs(ev + 1.0)) > epsilon) ++rep.outliers;
    if (std::abs(ev) < epsilon) ++rep.near_zero;
  }
  rep.eigenvalues = std::move(eigs);
  return rep;
}

void check_guard(std::size_t N, std::size_t guard, const char* what) {
  if (N > guard) throw std::length_error(std::string(what) + ": dense-size guard exceeded");
}

}  // namespace

SymbolSampler make_symbol_sampler(const TimeStencil& stencil,
                                  const SpectralSpatialOperator& spatial,
                                  std::size_t samples) {
  if (samples < 1) throw std::invalid_argument("make_symbol_sampler: need >= 1 sample");
  SymbolSampler s;
  s.stencil = stencil;
  s.mass_eigs = spatial.mass_eigs;
  s.stiff_eigs = spatial.stiff_eigs;
  s.grid.resize(samples);
  for (std::size_t i = 0; i < samples; ++i)
    s.grid[i] = -std::numbers::pi +
                (static_cast<double>(i) + 0.5) * 2.0 * std::numbers::pi /
                    static_cast<double>(samples);
  return s;
}

Eigen::MatrixXd dense_precond_power(const SpectralPreconditioner& P, double p,
                                    std::size_t guard) {
  const std::size_t N = P.n() * P.m();
  check_guard(N, guard, "dense_precond_power");
  Eigen::MatrixXd M(N, N);
  BlockVector e(P.n(), P.m()), col(P.n(), P.m());
  for (std::size_t j = 0; j < N; ++j) {
    e.data[j] = 1.0;
    P.apply_power(e, col, p);
    for (std::size_t i = 0; i < N; ++i) M(i, j) = col.data[i];
    e.data[j] = 0.0;
  }
  return M;
}

SpectrumReport preconditioned_spectrum(const AllAtOnceOperator& op,
                                       const SpectralPreconditioner& P, double epsilon,
                                       std::size_t guard) {
  const std::size_t N = op.size();
  check_guard(N, guard, "preconditioned_spectrum");
  const Eigen::MatrixXd YT = op.materialize_sym_dense(guard);
  const Eigen::MatrixXd Pih = dense_precond_power(P, -0.5, guard);
  Eigen::MatrixXd B = Pih * YT * Pih;
  B = 0.5 * (B + B.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + N);
  return cluster_stats(std::move(eigs), epsilon);
}

SpectrumReport plain_spectrum(const AllAtOnceOperator& op, double epsilon,
                              std::size_t guard) {
  const std::size_t N = op.size();
  check_guard(N, guard, "plain_spectrum");
  Eigen::MatrixXd YT = op.materialize_sym_dense(guard);
  YT = 0.5 * (YT + YT.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(YT, Eigen::EigenvaluesOnly);
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + N);
  return cluster_stats(std::move(eigs), epsilon);
}

std::size_t numerical_rank(const Eigen::MatrixXd& A) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  // Relative cutoff, with an absolute floor so matrices that are zero up to
  // rounding (sigma_1 itself is noise) report rank zero.
  const double thresh = std::max(1e-10 * sv(0), 1e-12);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  return rank;
}

NormalRankReport normal_equation_rank_check(const AllAtOnceOperator& op,
                                            const SpectralPreconditioner& P,
                                            std::size_t guard) {
  const std::size_t N = op.size();
  check_guard(N, guard, "normal_equation_rank_check");
  Eigen::MatrixXd Nmat(N, N);
  BlockVector e(op.n(), op.m()), col(op.n(), op.m());
  for (std::size_t j = 0; j < N; ++j) {
    e.data[j] = 1.0;
    apply_inverse_normal(P, op, e, col);
    for (std::size_t i = 0; i < N; ++i) Nmat(i, j) = col.data[i];
    e.data[j] = 0.0;
  }
  Nmat -= Eigen::MatrixXd::Identity(N, N);
  NormalRankReport rep;
  rep.max_offidentity = Nmat.cwiseAbs().maxCoeff();
  rep.rank = numerical_rank(Nmat);
  return rep;
}

double symbol_distribution_compare(const AllAtOnceOperator& op, const SymbolSampler& sampler,
                                   std::size_t guard) {
  const std::size_t N = op.size();
  check_guard(N, guard, "symbol_distribution_compare");
  Eigen::MatrixXd YT = op.materialize_sym_dense(guard);
  YT = 0.5 * (YT + YT.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(YT, Eigen::EigenvaluesOnly);

  const std::size_t m = sampler.stiff_eigs.size();
  std::vector<double> samples;
  samples.reserve(2 * sampler.grid.size() * m);
  for (double x : sampler.grid) {
    for (std::size_t j = 0; j < m; ++j) {
      std::complex<double> g = 0.0;
      for (std::size_t k = 0; k <= sampler.stencil.l; ++k) {
        const auto [mu, kap] = sampler.stencil.coeffs[k];
        g += (mu * sampler.mass_eigs[j] + kap * sampler.stiff_eigs[j]) *
             std::polar(1.0, static_cast<double>(k) * x);
      }
      const double s = std::abs(g);
      samples.push_back(s);
      samples.push_back(-s);
    }
  }
  std::sort(samples.begin(), samples.end());

  // Quantile-function distance: eigenvalue k sits at quantile (k+1/2)/N.
  double dist = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const double q = (static_cast<double>(k) + 0.5) / static_cast<double>(N);
    auto idx = static_cast<std::size_t>(q * static_cast<double>(samples.size()));
    idx = std::min(idx, samples.size() - 1);
    dist = std::max(dist, std::abs(es.eigenvalues()(k) - samples[idx]));
  }
  return dist;
}

std::size_t rank_bound_lemma_check(const TimeStencil& stencil,
                                   const SpectralSpatialOperator& spatial, std::size_t n,
                                   std::size_t K, std::size_t guard) {
  if (K < 1) throw std::invalid_argument("rank_bound_lemma_check: K must be >= 1");
  if (n <= 2 * K * spatial.m)
    throw std::invalid_argument("rank_bound_lemma_check: requires n > 2Km");
  check_guard(n * spatial.m, guard, "rank_bound_lemma_check");
  const auto P = SpectralPreconditioner::build_tau(stencil, spatial, n);
  const auto C = SpectralPreconditioner::build_circulant(stencil, spatial, n);
  const double p = 2.0 * static_cast<double>(K);
  const Eigen::MatrixXd D =
      dense_precond_power(C, p, guard) - dense_precond_power(P, p, guard);
  return numerical_rank(D);
}

void write_spectrum_dump(const std::string& path, const std::vector<double>& eigenvalues) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_spectrum_dump: cannot open " + path);
  out.precision(16);
  for (double ev : eigenvalues) out << ev << "\n";
}

}  // namespace aao

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "aao/discretize.hpp"
#include "aao/precond.hpp"
#include "aao/toeplitz_ops.hpp"

namespace aao {

/// Eigenvalue cluster statistics of a (preconditioned) symmetrized
/// all-at-once matrix.
struct SpectrumReport {
  std::vector<double> eigenvalues;  // sorted ascending
  double epsilon = 0.0;
  std::size_t outliers = 0;   // min(|ev-1|, |ev+1|) > epsilon
  std::size_t near_zero = 0;  // |ev| < epsilon
};

/// Scalar-symbol sampler: |g_j(x)| over a sample grid for every spatial
/// mode j, the empirical side of the spectral-distribution comparison.
struct SymbolSampler {
  TimeStencil stencil;
  std::vector<double> mass_eigs;
  std::vector<double> stiff_eigs;
  std::vector<double> grid;  // sample points in [-pi, pi]
};

/// Uniform midpoint grid of `samples` points over [-pi, pi].
SymbolSampler make_symbol_sampler(const TimeStencil& stencil,
                                  const SpectralSpatialOperator& spatial,
                                  std::size_t samples);

/// Dense n*m x n*m materialization of P^p via repeated applies.
Eigen::MatrixXd dense_precond_power(const SpectralPreconditioner& P, double p,
                                    std::size_t guard = 4096);

/// Eigenvalues of P^{-1} (Y T), computed through the similar symmetric form
/// P^{-1/2} (Y T) P^{-1/2}. Cluster statistics at radius epsilon.
SpectrumReport preconditioned_spectrum(const AllAtOnceOperator& op,
                                       const SpectralPreconditioner& P, double epsilon,
                                       std::size_t guard = 4096);

/// Eigenvalues of the symmetrized matrix itself (no preconditioner).
SpectrumReport plain_spectrum(const AllAtOnceOperator& op, double epsilon,
                              std::size_t guard = 4096);

struct NormalRankReport {
  std::size_t rank = 0;          // numerical rank of N - I
  double max_offidentity = 0.0;  // max |(N - I)_{ij}|
};

/// Numerical rank (sigma > 1e-10 sigma_1) of dense(N) - I where N is the
/// CGNE normal operator T^T P^{-2} T.
NormalRankReport normal_equation_rank_check(const AllAtOnceOperator& op,
                                            const SpectralPreconditioner& P,
                                            std::size_t guard = 4096);

/// Max componentwise gap between the sorted eigenvalues of Y T and the
/// sorted +-|g_j(x)| samples (a quantile-function distance).
double symbol_distribution_compare(const AllAtOnceOperator& op,
                                   const SymbolSampler& sampler,
                                   std::size_t guard = 4096);

/// Numerical rank of dense(C)^{2K} - dense(P)^{2K}; requires n > 2Km.
std::size_t rank_bound_lemma_check(const TimeStencil& stencil,
                                   const SpectralSpatialOperator& spatial, std::size_t n,
                                   std::size_t K, std::size_t guard = 4096);

/// Numerical rank with the threshold sigma_i > 1e-10 * sigma_1.
std::size_t numerical_rank(const Eigen::MatrixXd& A);

/// Plain-text dump, one eigenvalue per line (for external plotting).
void write_spectrum_dump(const std::string& path, const std::vector<double>& eigenvalues);

}  // namespace aao

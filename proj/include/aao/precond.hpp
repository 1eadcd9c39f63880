#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "aao/block_vector.hpp"
#include "aao/discretize.hpp"
#include "aao/toeplitz_ops.hpp"
#include "aao/transforms.hpp"

namespace aao {

/// Raised when a preconditioner symbol has a (numerically) zero eigenvalue,
/// e.g. the block circulant at a resonant frequency/space mode.
struct SingularSymbolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PrecondKind { tau, circulant };

/// Diagonal representation of the SPD preconditioner in its diagonalizing
/// basis: DST (x) DST for the sine-transform (tau) preconditioner
/// P = sqrt(T[|g|^2]), DFT (x) DST for the absolute-value Strang block
/// circulant C = sqrt(S^T S).
///
/// Entry (i, j) of diag holds |g_j(x_i)| where g_j is the scalar symbol of
/// spatial mode j; x_i = (i+1) pi/(n+1) for tau and 2 pi i/n for circulant.
/// Immutable after construction; applies are re-entrant.
class SpectralPreconditioner {
 public:
  static SpectralPreconditioner build_tau(const TimeStencil& stencil,
                                          const SpectralSpatialOperator& spatial,
                                          std::size_t n);
  static SpectralPreconditioner build_circulant(const TimeStencil& stencil,
                                                const SpectralSpatialOperator& spatial,
                                                std::size_t n);

  PrecondKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  /// Row-major n x m table of symbol moduli (time mode fastest by row).
  const std::vector<double>& diag() const { return diag_; }

  /// z = P^{-1} v
  void apply_inverse(const BlockVector& v, BlockVector& z) const;
  /// z = P v
  void apply(const BlockVector& v, BlockVector& z) const;
  /// z = P^p v for any real power p (diagonal power in transform space).
  void apply_power(const BlockVector& v, BlockVector& z, double p) const;

 private:
  SpectralPreconditioner(PrecondKind kind, std::size_t n, SpatialShape shape,
                         std::vector<double> diag);

  PrecondKind kind_;
  std::size_t n_, m_;
  std::vector<double> diag_;
  std::shared_ptr<TransformPlan> space_plan_;
  std::shared_ptr<TransformPlan> time_plan_;  // dst1_time (tau) or fft_time
};

/// The CGNE normal-equation operator N v = T^T P^{-2} T v. Symmetric
/// positive semidefinite; equals I + a rank <= m correction for the
/// one-step heat stencil.
void apply_inverse_normal(const SpectralPreconditioner& P, const AllAtOnceOperator& op,
                          const BlockVector& v, BlockVector& out);

}  // namespace aao

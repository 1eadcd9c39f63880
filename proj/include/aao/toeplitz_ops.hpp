#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>

#include "aao/block_vector.hpp"
#include "aao/discretize.hpp"
#include "aao/transforms.hpp"

namespace aao {

/// Block reversal (Y_n (x) I_m) x: block k of the output is block
/// n+1-k of the input. Involutory.
void flip(const BlockVector& x, BlockVector& out);

enum class ApplyMode {
  spectral,  // A_(k) z = U_m diag(mu_k mass + kappa_k stiff) U_m^T z
  stencil    // A_(k) z = mu_k z + kappa_k (a/h^2) * FD-stencil(z)
};

/// Matrix-free action of the all-at-once block Toeplitz matrix T, its
/// transpose, and the symmetrized Y*T.
///
/// Standard (marching) schemes are block lower triangular with A_(0) on
/// the diagonal:  y_k = sum_j A_(j) x_{k-j}.  The wave_central stencil is
/// centered, with A_(1) on the diagonal and A_(0) = A_(2) = M on the off
/// diagonals; the matrix is then symmetric and sym_matvec needs no flip.
///
/// Immutable after construction; matvecs are re-entrant and may run
/// concurrently on distinct outputs.
class AllAtOnceOperator {
 public:
  AllAtOnceOperator(std::shared_ptr<const SpectralSpatialOperator> spatial,
                    TimeStencil stencil, std::size_t n,
                    ApplyMode mode = ApplyMode::stencil);

  std::size_t n() const { return n_; }
  std::size_t m() const { return spatial_->m; }
  std::size_t size() const { return n_ * spatial_->m; }
  bool centered() const { return stencil_.centered(); }
  const TimeStencil& stencil() const { return stencil_; }
  const SpectralSpatialOperator& spatial() const { return *spatial_; }

  /// y = T x
  void matvec(const BlockVector& x, BlockVector& y) const;
  /// y = T^T x (blocks are symmetric, so only the band is mirrored)
  void transpose_matvec(const BlockVector& x, BlockVector& y) const;
  /// y = Y T x, the symmetric operator handed to MINRES
  void sym_matvec(const BlockVector& x, BlockVector& y) const;

  /// Dense n*m x n*m materialization of T. Throws std::length_error when
  /// n*m exceeds guard (protects the dense analysis path).
  Eigen::MatrixXd materialize_dense(std::size_t guard = 4096) const;
  /// Dense materialization of Y T (or of T itself when centered).
  Eigen::MatrixXd materialize_sym_dense(std::size_t guard = 4096) const;

 private:
  void banded_combine(const double* xin, double* yout, bool transpose) const;
  void apply_stiffness(std::span<const double> z, std::span<double> out) const;

  std::shared_ptr<const SpectralSpatialOperator> spatial_;
  TimeStencil stencil_;
  std::size_t n_;
  ApplyMode mode_;
  std::vector<std::vector<double>> spectral_coeff_;  // a_{k,j}, k = 0..l
  std::unique_ptr<TransformPlan> space_plan_;
};

}  // namespace aao

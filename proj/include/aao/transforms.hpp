#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "aao/block_vector.hpp"

// Forward declaration, keeps fftw3.h out of the public headers.
struct fftw_plan_s;

namespace aao {

/// Interior-grid shape of one spatial block: m1 points (1D) or an
/// m1 x m2 tensor grid (2D, x index fastest).
struct SpatialShape {
  int dim = 1;
  std::size_t m1 = 0;
  std::size_t m2 = 0;

  static SpatialShape one_d(std::size_t m) { return {1, m, 0}; }
  static SpatialShape two_d(std::size_t m1, std::size_t m2) { return {2, m1, m2}; }
  std::size_t total() const { return dim == 1 ? m1 : m1 * m2; }
};

enum class TransformKind { dst1_time, dst1_space, fft_time };

/// Precomputed FFTW plans for one transform direction of an n x m block
/// vector. Immutable after construction and safe to share between threads;
/// the apply methods are re-entrant (execution only touches caller buffers).
/// Construction is not thread-safe (FFTW's planner is global).
///
/// dst1_time / dst1_space apply the orthonormal symmetric DST-I matrix
/// S_L = sqrt(2/(L+1)) [sin(ij pi/(L+1))] along the time index (length n,
/// batched over the m block components) or along the spatial index(es) of
/// every block. S_L is involutory, so the same plan inverts itself.
///
/// fft_time applies the unitary DFT of length n to each of the m component
/// sequences.
class TransformPlan {
 public:
  TransformPlan(TransformKind kind, std::size_t n, SpatialShape space);
  ~TransformPlan();
  TransformPlan(const TransformPlan&) = delete;
  TransformPlan& operator=(const TransformPlan&) = delete;

  TransformKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t length() const { return n_ * m_; }

  /// Real DST-I application, out of place; `in` and `out` must not alias.
  void apply(std::span<const double> in, std::span<double> out) const;

  /// Unitary DFT along time (fft_time plans only), out of place.
  void apply_fft(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out, bool forward) const;

 private:
  TransformKind kind_;
  std::size_t n_, m_;
  SpatialShape space_;
  double scale_ = 1.0;
  fftw_plan_s* plan_ = nullptr;
  fftw_plan_s* plan_backward_ = nullptr;  // fft_time only
};

/// Orthonormal DST-I of a single vector, S_n v.
std::vector<double> dst1(std::span<const double> v);

/// (S_n (x) U_m) x with U_m the spatial DST (tensor DST in 2D). Involutory.
/// Throws std::invalid_argument on shape mismatch.
void apply_kron_transform(const TransformPlan& time_plan,
                          const TransformPlan& space_plan,
                          const BlockVector& x, BlockVector& out);

/// Unitary DFT along the time index of each block component.
/// forward=false applies the inverse; forward-then-inverse is the identity.
void fft_time(const TransformPlan& fft_plan,
              std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out, bool forward);

namespace detail {
/// Thread-local scratch, grown on demand (pooled to keep applies re-entrant).
std::vector<double>& scratch_real(std::size_t len, int slot = 0);
std::vector<std::complex<double>>& scratch_complex(std::size_t len, int slot = 0);
}  // namespace detail

}  // namespace aao

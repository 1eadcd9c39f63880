#include "aao/toeplitz_ops.hpp"

#include <cstring>
#include <stdexcept>

namespace aao {

void flip(const BlockVector& x, BlockVector& out) {
  if (!out.same_shape(x)) out = BlockVector(x.n, x.m);
  for (std::size_t k = 0; k < x.n; ++k) {
    auto src = x.block(x.n - 1 - k);
    std::memcpy(out.block(k).data(), src.data(), x.m * sizeof(double));
  }
}

AllAtOnceOperator::AllAtOnceOperator(std::shared_ptr<const SpectralSpatialOperator> spatial,
                                     TimeStencil stencil, std::size_t n, ApplyMode mode)
    : spatial_(std::move(spatial)), stencil_(std::move(stencil)), n_(n), mode_(mode) {
  if (n_ <= stencil_.l)
    throw std::invalid_argument("AllAtOnceOperator: need n > stencil length");
  const std::size_t m = spatial_->m;
  spectral_coeff_.resize(stencil_.coeffs.size());
  for (std::size_t k = 0; k < stencil_.coeffs.size(); ++k) {
    spectral_coeff_[k].resize(m);
    const auto [mu, kap] = stencil_.coeffs[k];
    for (std::size_t j = 0; j < m; ++j)
      spectral_coeff_[k][j] = mu * spatial_->mass_eigs[j] + kap * spatial_->stiff_eigs[j];
  }
  if (mode_ == ApplyMode::spectral)
    space_plan_ = std::make_unique<TransformPlan>(TransformKind::dst1_space, n_,
                                                  spatial_->shape);
}

void AllAtOnceOperator::apply_stiffness(std::span<const double> z,
                                        std::span<double> out) const {
  const double c = spatial_->a / (spatial_->h * spatial_->h);
  if (spatial_->shape.dim == 1) {
    const std::size_t m = spatial_->m;
    for (std::size_t i = 0; i < m; ++i) {
      double v = 2.0 * z[i];
      if (i > 0) v -= z[i - 1];
      if (i + 1 < m) v -= z[i + 1];
      out[i] = c * v;
    }
  } else {
    const std::size_t m1 = spatial_->shape.m1;
    for (std::size_t jy = 0; jy < m1; ++jy) {
      for (std::size_t jx = 0; jx < m1; ++jx) {
        const std::size_t idx = jy * m1 + jx;
        double v = 4.0 * z[idx];
        if (jx > 0) v -= z[idx - 1];
        if (jx + 1 < m1) v -= z[idx + 1];
        if (jy > 0) v -= z[idx - m1];
        if (jy + 1 < m1) v -= z[idx + m1];
        out[idx] = c * v;
      }
    }
  }
}

// Accumulate the block band over transformed or physical data. xin/yout are
// n*m arrays; coefficient k contributes on diagonal offset k (standard) or
// k-1 (centered). Transposition mirrors the band; the blocks themselves are
// symmetric.
void AllAtOnceOperator::banded_combine(const double* xin, double* yout,
                                       bool transpose) const {
  const std::size_t m = spatial_->m;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_);
  const std::ptrdiff_t shift = stencil_.centered() ? 1 : 0;
  std::memset(yout, 0, n_ * m * sizeof(double));
  for (std::size_t k = 0; k < spectral_coeff_.size(); ++k) {
    std::ptrdiff_t off = static_cast<std::ptrdiff_t>(k) - shift;  // row - col
    if (transpose) off = -off;
    const double* a = spectral_coeff_[k].data();
    const std::ptrdiff_t row_begin = std::max<std::ptrdiff_t>(0, off);
    const std::ptrdiff_t row_end = std::min<std::ptrdiff_t>(n, n + off);
    for (std::ptrdiff_t r = row_begin; r < row_end; ++r) {
      const double* xb = xin + (r - off) * static_cast<std::ptrdiff_t>(m);
      double* yb = yout + r * static_cast<std::ptrdiff_t>(m);
      for (std::size_t j = 0; j < m; ++j) yb[j] += a[j] * xb[j];
    }
  }
}

namespace {

void check_shapes(const AllAtOnceOperator& op, const BlockVector& x, BlockVector& y) {
  if (x.n != op.n() || x.m != op.m())
    throw std::invalid_argument("AllAtOnceOperator: vector shape mismatch");
  if (!y.same_shape(x)) y = BlockVector(x.n, x.m);
}

}  // namespace

void AllAtOnceOperator::matvec(const BlockVector& x, BlockVector& y) const {
  check_shapes(*this, x, y);
  const std::size_t m = spatial_->m;
  if (mode_ == ApplyMode::spectral) {
    auto& xh = detail::scratch_real(size(), 1);
    auto& yh = detail::scratch_real(size(), 2);
    space_plan_->apply(x.data, std::span<double>(xh.data(), size()));
    banded_combine(xh.data(), yh.data(), false);
    space_plan_->apply(std::span<const double>(yh.data(), size()), y.data);
    return;
  }
  // Stencil path: one stiffness pass per block, then the banded mass/
  // stiffness combination in physical space.
  auto& kx = detail::scratch_real(size(), 1);
  for (std::size_t r = 0; r < n_; ++r)
    apply_stiffness(x.block(r), std::span<double>(kx.data() + r * m, m));

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_);
  const std::ptrdiff_t shift = stencil_.centered() ? 1 : 0;
  y.set_zero();
  for (std::size_t k = 0; k < stencil_.coeffs.size(); ++k) {
    const auto [mu, kap] = stencil_.coeffs[k];
    const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(k) - shift;
    const std::ptrdiff_t row_begin = std::max<std::ptrdiff_t>(0, off);
    const std::ptrdiff_t row_end = std::min<std::ptrdiff_t>(n, n + off);
    for (std::ptrdiff_t r = row_begin; r < row_end; ++r) {
      const double* xb = x.data.data() + (r - off) * static_cast<std::ptrdiff_t>(m);
      const double* kb = kx.data() + (r - off) * static_cast<std::ptrdiff_t>(m);
      double* yb = y.data.data() + r * static_cast<std::ptrdiff_t>(m);
      for (std::size_t j = 0; j < m; ++j) yb[j] += mu * xb[j] + kap * kb[j];
    }
  }
}

void AllAtOnceOperator::transpose_matvec(const BlockVector& x, BlockVector& y) const {
  if (stencil_.centered()) {  // symmetric matrix
    matvec(x, y);
    return;
  }
  check_shapes(*this, x, y);
  const std::size_t m = spatial_->m;
  if (mode_ == ApplyMode::spectral) {
    auto& xh = detail::scratch_real(size(), 1);
    auto& yh = detail::scratch_real(size(), 2);
    space_plan_->apply(x.data, std::span<double>(xh.data(), size()));
    banded_combine(xh.data(), yh.data(), true);
    space_plan_->apply(std::span<const double>(yh.data(), size()), y.data);
    return;
  }
  auto& kx = detail::scratch_real(size(), 1);
  for (std::size_t r = 0; r < n_; ++r)
    apply_stiffness(x.block(r), std::span<double>(kx.data() + r * m, m));
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_);
  y.set_zero();
  for (std::size_t k = 0; k < stencil_.coeffs.size(); ++k) {
    const auto [mu, kap] = stencil_.coeffs[k];
    const std::ptrdiff_t off = -static_cast<std::ptrdiff_t>(k);
    const std::ptrdiff_t row_begin = std::max<std::ptrdiff_t>(0, off);
    const std::ptrdiff_t row_end = std::min<std::ptrdiff_t>(n, n + off);
    for (std::ptrdiff_t r = row_begin; r < row_end; ++r) {
      const double* xb = x.data.data() + (r - off) * static_cast<std::ptrdiff_t>(m);
      const double* kb = kx.data() + (r - off) * static_cast<std::ptrdiff_t>(m);
      double* yb = y.data.data() + r * static_cast<std::ptrdiff_t>(m);
      for (std::size_t j = 0; j < m; ++j) yb[j] += mu * xb[j] + kap * kb[j];
    }
  }
}

void AllAtOnceOperator::sym_matvec(const BlockVector& x, BlockVector& y) const {
  if (stencil_.centered()) {
    matvec(x, y);
    return;
  }
  matvec(x, y);
  // reverse blocks in place
  const std::size_t m = spatial_->m;
  auto& tmp = detail::scratch_real(m, 3);
  for (std::size_t k = 0; k < n_ / 2; ++k) {
    double* lo = y.data.data() + k * m;
    double* hi = y.data.data() + (n_ - 1 - k) * m;
    std::memcpy(tmp.data(), lo, m * sizeof(double));
    std::memcpy(lo, hi, m * sizeof(double));
    std::memcpy(hi, tmp.data(), m * sizeof(double));
  }
}

Eigen::MatrixXd AllAtOnceOperator::materialize_dense(std::size_t guard) const {
  const std::size_t N = size();
  if (N > guard)
    throw std::length_error("materialize_dense: n*m exceeds the dense-size guard");
  const std::size_t m = spatial_->m;
  // Dense spatial stiffness via the FD stencil (exact).
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
  std::vector<double> e(m, 0.0), col(m);
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = 1.0;
    apply_stiffness(e, col);
    for (std::size_t i = 0; i < m; ++i) K(i, j) = col[i];
    e[j] = 0.0;
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N, N);
  const std::ptrdiff_t shift = stencil_.centered() ? 1 : 0;
  for (std::size_t k = 0; k < stencil_.coeffs.size(); ++k) {
    const auto [mu, kap] = stencil_.coeffs[k];
    Eigen::MatrixXd Ak = mu * Eigen::MatrixXd::Identity(m, m) + kap * K;
    const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(k) - shift;
    for (std::ptrdiff_t r = std::max<std::ptrdiff_t>(0, off);
         r < std::min<std::ptrdiff_t>(n_, n_ + off); ++r)
      T.block(r * m, (r - off) * m, m, m) = Ak;
  }
  return T;
}

Eigen::MatrixXd AllAtOnceOperator::materialize_sym_dense(std::size_t guard) const {
  Eigen::MatrixXd T = materialize_dense(guard);
  if (stencil_.centered()) return T;
  const std::size_t m = spatial_->m;
  Eigen::MatrixXd YT(T.rows(), T.cols());
  for (std::size_t k = 0; k < n_; ++k)
    YT.middleRows(k * m, m) = T.middleRows((n_ - 1 - k) * m, m);
  return YT;
}

}  // namespace aao

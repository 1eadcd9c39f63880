#include "aao/precond.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace aao {

namespace {

constexpr double kSingularRelTol = 1e-14;

std::vector<double> symbol_moduli(const TimeStencil& stencil,
                                  const SpectralSpatialOperator& spatial, std::size_t n,
                                  bool tau_grid) {
  const std::size_t m = spatial.m;
  const std::size_t l = stencil.l;
  std::vector<double> diag(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = tau_grid
                         ? (static_cast<double>(i + 1)) * std::numbers::pi /
                               (static_cast<double>(n) + 1.0)
                         : 2.0 * std::numbers::pi * static_cast<double>(i) /
                               static_cast<double>(n);
    // e^{ikx} for k = 0..l
    std::vector<std::complex<double>> ph(l + 1);
    for (std::size_t k = 0; k <= l; ++k)
      ph[k] = std::polar(1.0, static_cast<double>(k) * x);
    for (std::size_t j = 0; j < m; ++j) {
      std::complex<double> g = 0.0;
      for (std::size_t k = 0; k <= l; ++k) {
        const auto [mu, kap] = stencil.coeffs[k];
        g += (mu * spatial.mass_eigs[j] + kap * spatial.stiff_eigs[j]) * ph[k];
      }
      diag[i * m + j] = std::abs(g);
    }
  }
  return diag;
}

void check_spd(const std::vector<double>& diag, const char* what) {
  double mx = 0.0;
  for (double d : diag) mx = std::max(mx, d);
  for (double d : diag)
    if (d <= kSingularRelTol * mx)
      throw SingularSymbolError(std::string(what) +
                                ": symbol modulus vanishes at some (frequency, "
                                "space) mode; preconditioner is singular");
}

}  // namespace

SpectralPreconditioner::SpectralPreconditioner(PrecondKind kind, std::size_t n,
                                               SpatialShape shape, std::vector<double> diag)
    : kind_(kind), n_(n), m_(shape.total()), diag_(std::move(diag)) {
  space_plan_ = std::make_shared<TransformPlan>(TransformKind::dst1_space, n_, shape);
  time_plan_ = std::make_shared<TransformPlan>(
      kind_ == PrecondKind::tau ? TransformKind::dst1_time : TransformKind::fft_time, n_,
      shape);
}

SpectralPreconditioner SpectralPreconditioner::build_tau(
    const TimeStencil& stencil, const SpectralSpatialOperator& spatial, std::size_t n) {
  if (n < 1) throw std::invalid_argument("build_tau: n must be >= 1");
  auto diag = symbol_moduli(stencil, spatial, n, /*tau_grid=*/true);
  check_spd(diag, "build_tau");
  return SpectralPreconditioner(PrecondKind::tau, n, spatial.shape, std::move(diag));
}

SpectralPreconditioner SpectralPreconditioner::build_circulant(
    const TimeStencil& stencil, const SpectralSpatialOperator& spatial, std::size_t n) {
  if (n < 1) throw std::invalid_argument("build_circulant: n must be >= 1");
  auto diag = symbol_moduli(stencil, spatial, n, /*tau_grid=*/false);
  check_spd(diag, "build_circulant");
  return SpectralPreconditioner(PrecondKind::circulant, n, spatial.shape, std::move(diag));
}

void SpectralPreconditioner::apply_power(const BlockVector& v, BlockVector& z,
                                         double p) const {
  if (v.n != n_ || v.m != m_)
    throw std::invalid_argument("SpectralPreconditioner: vector shape mismatch");
  if (!z.same_shape(v)) z = BlockVector(n_, m_);
  const std::size_t N = n_ * m_;

  auto scale_by_power = [&](auto* buf) {
    if (p == -1.0) {
      for (std::size_t i = 0; i < N; ++i) buf[i] /= diag_[i];
    } else if (p == 1.0) {
      for (std::size_t i = 0; i < N; ++i) buf[i] *= diag_[i];
    } else {
      for (std::size_t i = 0; i < N; ++i) buf[i] *= std::pow(diag_[i], p);
    }
  };

  if (kind_ == PrecondKind::tau) {
    auto& t0 = detail::scratch_real(N, 0);
    auto& t1 = detail::scratch_real(N, 1);
    space_plan_->apply(v.data, std::span<double>(t0.data(), N));
    time_plan_->apply(std::span<const double>(t0.data(), N), std::span<double>(t1.data(), N));
    scale_by_power(t1.data());
    time_plan_->apply(std::span<const double>(t1.data(), N), std::span<double>(t0.data(), N));
    space_plan_->apply(std::span<const double>(t0.data(), N), z.data);
    return;
  }

  // Circulant: DST in space, unitary FFT in time, diagonal power, back.
  auto& t0 = detail::scratch_real(N, 0);
  space_plan_->apply(v.data, std::span<double>(t0.data(), N));
  auto& c0 = detail::scratch_complex(N, 0);
  auto& c1 = detail::scratch_complex(N, 1);
  for (std::size_t i = 0; i < N; ++i) c0[i] = t0[i];
  time_plan_->apply_fft(std::span<const std::complex<double>>(c0.data(), N),
                        std::span<std::complex<double>>(c1.data(), N), true);
  scale_by_power(c1.data());
  time_plan_->apply_fft(std::span<const std::complex<double>>(c1.data(), N),
                        std::span<std::complex<double>>(c0.data(), N), false);
  // The diagonal is conjugate-symmetric in the frequency index, so the
  // result is real up to rounding; the residue is checked, then dropped.
  double re2 = 0.0, im2 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    re2 += c0[i].real() * c0[i].real();
    im2 += c0[i].imag() * c0[i].imag();
    t0[i] = c0[i].real();
  }
  if (im2 > 1e-12 * (re2 + 1e-300))
    throw std::runtime_error("circulant apply: imaginary residue too large");
  space_plan_->apply(std::span<const double>(t0.data(), N), z.data);
}

void SpectralPreconditioner::apply_inverse(const BlockVector& v, BlockVector& z) const {
  apply_power(v, z, -1.0);
}

void SpectralPreconditioner::apply(const BlockVector& v, BlockVector& z) const {
  apply_power(v, z, 1.0);
}

void apply_inverse_normal(const SpectralPreconditioner& P, const AllAtOnceOperator& op,
                          const BlockVector& v, BlockVector& out) {
  BlockVector t1(v.n, v.m), t2(v.n, v.m);
  op.matvec(v, t1);
  P.apply_inverse(t1, t2);
  P.apply_inverse(t2, t1);
  op.transpose_matvec(t1, out);
}

}  // namespace aao

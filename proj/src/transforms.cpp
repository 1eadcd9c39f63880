#include "aao/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace aao {

namespace detail {

std::vector<double>& scratch_real(std::size_t len, int slot) {
  thread_local std::vector<double> pool[4];
  auto& buf = pool[slot & 3];
  if (buf.size() < len) buf.resize(len);
  return buf;
}

std::vector<std::complex<double>>& scratch_complex(std::size_t len, int slot) {
  thread_local std::vector<std::complex<double>> pool[2];
  auto& buf = pool[slot & 1];
  if (buf.size() < len) buf.resize(len);
  return buf;
}

}  // namespace detail

TransformPlan::TransformPlan(TransformKind kind, std::size_t n, SpatialShape space)
    : kind_(kind), n_(n), m_(space.total()), space_(space) {
  if (n_ < 1 || m_ < 1) throw std::invalid_argument("TransformPlan: sizes must be >= 1");
  if (space.dim != 1 && space.dim != 2)
    throw std::invalid_argument("TransformPlan: dim must be 1 or 2");

  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  // Planning buffers; FFTW_ESTIMATE leaves them untouched but wants pointers.
  std::vector<double> a(n_ * m_), b(n_ * m_);

  switch (kind_) {
    case TransformKind::dst1_time: {
      int len = static_cast<int>(n_);
      fftw_r2r_kind k = FFTW_RODFT00;
      plan_ = fftw_plan_many_r2r(1, &len, static_cast<int>(m_), a.data(), nullptr,
                                 static_cast<int>(m_), 1, b.data(), nullptr,
                                 static_cast<int>(m_), 1, &k, flags);
      scale_ = 1.0 / std::sqrt(2.0 * (static_cast<double>(n_) + 1.0));
      break;
    }
    case TransformKind::dst1_space: {
      if (space_.dim == 1) {
        int len = static_cast<int>(space_.m1);
        fftw_r2r_kind k = FFTW_RODFT00;
        plan_ = fftw_plan_many_r2r(1, &len, static_cast<int>(n_), a.data(), nullptr, 1,
                                   static_cast<int>(m_), b.data(), nullptr, 1,
                                   static_cast<int>(m_), &k, flags);
        scale_ = 1.0 / std::sqrt(2.0 * (static_cast<double>(space_.m1) + 1.0));
      } else {
        // Row-major block layout: index = iy*m1 + ix, x fastest.
        int len[2] = {static_cast<int>(space_.m2), static_cast<int>(space_.m1)};
        fftw_r2r_kind k[2] = {FFTW_RODFT00, FFTW_RODFT00};
        plan_ = fftw_plan_many_r2r(2, len, static_cast<int>(n_), a.data(), nullptr, 1,
                                   static_cast<int>(m_), b.data(), nullptr, 1,
                                   static_cast<int>(m_), k, flags);
        scale_ = 1.0 / (std::sqrt(2.0 * (static_cast<double>(space_.m1) + 1.0)) *
                        std::sqrt(2.0 * (static_cast<double>(space_.m2) + 1.0)));
      }
      break;
    }
    case TransformKind::fft_time: {
      int len = static_cast<int>(n_);
      std::vector<std::complex<double>> ca(n_ * m_), cb(n_ * m_);
      auto* pa = reinterpret_cast<fftw_complex*>(ca.data());
      auto* pb = reinterpret_cast<fftw_complex*>(cb.data());
      plan_ = fftw_plan_many_dft(1, &len, static_cast<int>(m_), pa, nullptr,
                                 static_cast<int>(m_), 1, pb, nullptr,
                                 static_cast<int>(m_), 1, FFTW_FORWARD, flags);
      plan_backward_ = fftw_plan_many_dft(1, &len, static_cast<int>(m_), pa, nullptr,
                                          static_cast<int>(m_), 1, pb, nullptr,
                                          static_cast<int>(m_), 1, FFTW_BACKWARD, flags);
      scale_ = 1.0 / std::sqrt(static_cast<double>(n_));
      break;
    }
  }
  if (!plan_) throw std::runtime_error("TransformPlan: FFTW planning failed");
}

TransformPlan::~TransformPlan() {
  if (plan_) fftw_destroy_plan(plan_);
  if (plan_backward_) fftw_destroy_plan(plan_backward_);
}

void TransformPlan::apply(std::span<const double> in, std::span<double> out) const {
  if (kind_ == TransformKind::fft_time)
    throw std::invalid_argument("TransformPlan::apply: plan is fft_time, use apply_fft");
  if (in.size() != length() || out.size() != length())
    throw std::invalid_argument("TransformPlan::apply: size mismatch");
  if (in.data() == out.data())
    throw std::invalid_argument("TransformPlan::apply: in and out must not alias");
  fftw_execute_r2r(plan_, const_cast<double*>(in.data()), out.data());
  for (auto& v : out) v *= scale_;
}

void TransformPlan::apply_fft(std::span<const std::complex<double>> in,
                              std::span<std::complex<double>> out, bool forward) const {
  if (kind_ != TransformKind::fft_time)
    throw std::invalid_argument("TransformPlan::apply_fft: not an fft_time plan");
  if (in.size() != length() || out.size() != length())
    throw std::invalid_argument("TransformPlan::apply_fft: size mismatch");
  auto* pin = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(forward ? plan_ : plan_backward_, pin, pout);
  for (auto& v : out) v *= scale_;
}

std::vector<double> dst1(std::span<const double> v) {
  TransformPlan plan(TransformKind::dst1_time, v.size(), SpatialShape::one_d(1));
  std::vector<double> out(v.size());
  plan.apply(v, out);
  return out;
}

void apply_kron_transform(const TransformPlan& time_plan, const TransformPlan& space_plan,
                          const BlockVector& x, BlockVector& out) {
  if (time_plan.length() != x.size() || space_plan.length() != x.size())
    throw std::invalid_argument("apply_kron_transform: plan/vector size mismatch");
  if (!out.same_shape(x)) out = BlockVector(x.n, x.m);
  auto& tmp = detail::scratch_real(x.size(), 0);
  space_plan.apply(x.data, std::span<double>(tmp.data(), x.size()));
  time_plan.apply(std::span<const double>(tmp.data(), x.size()), out.data);
}

void fft_time(const TransformPlan& fft_plan, std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out, bool forward) {
  fft_plan.apply_fft(in, out, forward);
}

}  // namespace aao

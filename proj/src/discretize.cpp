#include "aao/discretize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aao {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> laplacian_eigs_1d(std::size_t m, double a, double h) {
  std::vector<double> eigs(m);
  for (std::size_t j = 1; j <= m; ++j)
    eigs[j - 1] = (a / (h * h)) *
                  (2.0 - 2.0 * std::cos(static_cast<double>(j) * kPi /
                                        (static_cast<double>(m) + 1.0)));
  return eigs;
}

/// out = U_m diag(alpha*mass + beta*stiff)^p U_m^T v  with p in {+1, -1}.
std::vector<double> spectral_mass_stiff_apply(const SpectralSpatialOperator& spatial,
                                              double alpha, double beta,
                                              std::span<const double> v, bool invert) {
  TransformPlan space(TransformKind::dst1_space, 1, spatial.shape);
  std::vector<double> vh(spatial.m), out(spatial.m);
  space.apply(v, vh);
  for (std::size_t j = 0; j < spatial.m; ++j) {
    const double d = alpha * spatial.mass_eigs[j] + beta * spatial.stiff_eigs[j];
    vh[j] = invert ? vh[j] / d : vh[j] * d;
  }
  space.apply(vh, out);
  return out;
}

}  // namespace

SpectralSpatialOperator build_laplacian_1d(std::size_t m, double a, double L) {
  if (m < 1) throw std::invalid_argument("build_laplacian_1d: m must be >= 1");
  if (a <= 0.0 || L <= 0.0)
    throw std::invalid_argument("build_laplacian_1d: a and L must be positive");
  SpectralSpatialOperator op;
  op.m = m;
  op.shape = SpatialShape::one_d(m);
  op.h = L / (static_cast<double>(m) + 1.0);
  op.a = a;
  op.domain_length = L;
  op.mass_eigs.assign(m, 1.0);
  op.stiff_eigs = laplacian_eigs_1d(m, a, op.h);
  return op;
}

SpectralSpatialOperator build_laplacian_2d(std::size_t m1, double a, double L) {
  if (m1 < 1) throw std::invalid_argument("build_laplacian_2d: m1 must be >= 1");
  if (a <= 0.0 || L <= 0.0)
    throw std::invalid_argument("build_laplacian_2d: a and L must be positive");
  SpectralSpatialOperator op;
  op.m = m1 * m1;
  op.shape = SpatialShape::two_d(m1, m1);
  op.h = L / (static_cast<double>(m1) + 1.0);
  op.a = a;
  op.domain_length = L;
  op.mass_eigs.assign(op.m, 1.0);
  const auto lam = laplacian_eigs_1d(m1, a, op.h);
  op.stiff_eigs.resize(op.m);
  for (std::size_t jy = 0; jy < m1; ++jy)
    for (std::size_t jx = 0; jx < m1; ++jx)
      op.stiff_eigs[jy * m1 + jx] = lam[jx] + lam[jy];
  return op;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::theta: return "theta";
    case Scheme::bdf2: return "bdf2";
    case Scheme::wave_two_step: return "wave-two-step";
    case Scheme::wave_central: return "wave-central";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "theta") return Scheme::theta;
  if (s == "bdf2") return Scheme::bdf2;
  if (s == "wave-two-step") return Scheme::wave_two_step;
  if (s == "wave-central") return Scheme::wave_central;
  throw std::invalid_argument("unknown scheme tag: " + s);
}

void apply_example_defaults(ProblemSpec& spec, bool a_was_set) {
  if (spec.equation == Equation::heat) {
    if (!a_was_set) spec.a = 1e-5;
    spec.initial = spec.dim == 1 ? InitialData::sine_squared : InitialData::product_parabola;
    spec.forcing = Forcing::none;
  } else {
    if (!a_was_set) spec.a = 1.0;
    spec.initial = spec.dim == 1 ? InitialData::windowed_cosine : InitialData::product_parabola;
    spec.forcing = spec.dim == 2 ? Forcing::manufactured_log : Forcing::none;
  }
}

TimeStencil make_stencil(const ProblemSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("make_stencil: n must be >= 1");
  if (spec.T <= 0.0) throw std::invalid_argument("make_stencil: T must be positive");
  const double tau = spec.tau();
  TimeStencil st;
  st.scheme = spec.scheme;
  st.tau = tau;
  st.theta = spec.theta;
  switch (spec.scheme) {
    case Scheme::theta:
      if (spec.theta < 0.0 || spec.theta > 1.0)
        throw std::invalid_argument("make_stencil: theta must lie in [0,1]");
      st.l = 1;
      st.coeffs = {{1.0, spec.theta * tau}, {-1.0, (1.0 - spec.theta) * tau}};
      break;
    case Scheme::bdf2:
      st.l = 2;
      st.coeffs = {{1.5, tau}, {-2.0, 0.0}, {0.5, 0.0}};
      break;
    case Scheme::wave_two_step:
      st.l = 2;
      st.coeffs = {{1.0, tau * tau}, {-2.0, 0.0}, {1.0, 0.0}};
      break;
    case Scheme::wave_central:
      st.l = 2;
      st.coeffs = {{1.0, 0.0}, {-2.0, tau * tau}, {1.0, 0.0}};
      break;
  }
  if (spec.n < st.l) throw std::invalid_argument("make_stencil: need n >= stencil length");
  return st;
}

std::vector<double> evaluate_initial(const ProblemSpec& spec,
                                     const SpectralSpatialOperator& spatial) {
  std::vector<double> u0(spatial.m, 0.0);
  const double h = spatial.h;
  if (spec.dim == 1) {
    for (std::size_t i = 0; i < spatial.m; ++i) {
      const double x = static_cast<double>(i + 1) * h;
      switch (spec.initial) {
        case InitialData::zero: break;
        case InitialData::sine_squared: {
          const double s = std::sin(kPi * x);
          u0[i] = s * s;
          break;
        }
        case InitialData::product_parabola:
          u0[i] = x * (x - 1.0);
          break;
        case InitialData::windowed_cosine:
          if (x >= 3.0 / 8.0 && x <= 5.0 / 8.0) {
            const double c = std::cos(4.0 * kPi * (x - 0.5));
            u0[i] = c * c;
          }
          break;
      }
    }
  } else {
    const std::size_t m1 = spatial.shape.m1;
    for (std::size_t jy = 0; jy < m1; ++jy) {
      const double y = static_cast<double>(jy + 1) * h;
      for (std::size_t jx = 0; jx < m1; ++jx) {
        const double x = static_cast<double>(jx + 1) * h;
        switch (spec.initial) {
          case InitialData::zero: break;
          case InitialData::sine_squared: {
            const double s = std::sin(kPi * x) * std::sin(kPi * y);
            u0[jy * m1 + jx] = s * s;
            break;
          }
          case InitialData::product_parabola:
            u0[jy * m1 + jx] = x * (x - 1.0) * y * (y - 1.0);
            break;
          case InitialData::windowed_cosine:
            throw std::invalid_argument("windowed_cosine initial data is 1D only");
        }
      }
    }
  }
  return u0;
}

std::vector<double> evaluate_forcing(const ProblemSpec& spec,
                                     const SpectralSpatialOperator& spatial,
                                     std::size_t k) {
  if (spec.forcing == Forcing::none) return {};
  std::vector<double> f(spatial.m, 0.0);
  if (spec.forcing == Forcing::constant_one) {
    std::fill(f.begin(), f.end(), 1.0);
    return f;
  }
  // manufactured_log: forcing of the exact solution
  // u = x(x-1)y(y-1) * ((t+1)ln(t+1) - t + 1) of the 2D wave equation.
  if (spec.dim != 2)
    throw std::invalid_argument("manufactured_log forcing is 2D only");
  const double t = static_cast<double>(k) * spec.tau();
  const double g2 = 1.0 / (t + 1.0);                              // g''(t)
  const double g = (t + 1.0) * std::log(t + 1.0) - t + 1.0;       // g(t)
  const std::size_t m1 = spatial.shape.m1;
  const double h = spatial.h;
  for (std::size_t jy = 0; jy < m1; ++jy) {
    const double y = static_cast<double>(jy + 1) * h;
    for (std::size_t jx = 0; jx < m1; ++jx) {
      const double x = static_cast<double>(jx + 1) * h;
      const double xy = x * (x - 1.0) * y * (y - 1.0);
      const double lap = 2.0 * (x * (x - 1.0) + y * (y - 1.0));
      f[jy * m1 + jx] = xy * g2 - g * lap;
    }
  }
  return f;
}

BlockVector build_rhs(const ProblemSpec& spec, const SpectralSpatialOperator& spatial,
                      const TimeStencil& stencil) {
  const std::size_t n = spec.n;
  const std::size_t m = spatial.m;
  const double tau = stencil.tau;
  BlockVector b(n, m);
  const auto u0 = evaluate_initial(spec, spatial);

  auto add_scaled = [](std::span<double> dst, double alpha, std::span<const double> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += alpha * src[i];
  };

  switch (stencil.scheme) {
    case Scheme::theta: {
      const double th = stencil.theta;
      // (M - (1-theta) tau K) u0 into the first block.
      const auto w = spectral_mass_stiff_apply(spatial, 1.0, -(1.0 - th) * tau, u0, false);
      add_scaled(b.block(0), 1.0, w);
      if (spec.forcing != Forcing::none) {
        auto fprev = evaluate_forcing(spec, spatial, 0);
        for (std::size_t k = 1; k <= n; ++k) {
          auto fk = evaluate_forcing(spec, spatial, k);
          add_scaled(b.block(k - 1), th * tau, fk);
          add_scaled(b.block(k - 1), (1.0 - th) * tau, fprev);
          fprev = std::move(fk);
        }
      }
      break;
    }
    case Scheme::bdf2: {
      // Backward-Euler bootstrap for the first step, then the first block
      // row enforces u1 exactly: b1 = A_(0) u1.
      std::vector<double> rhs1 = u0;
      if (spec.forcing != Forcing::none) {
        const auto f1 = evaluate_forcing(spec, spatial, 1);
        add_scaled(rhs1, tau, f1);
      }
      const auto u1 = spectral_mass_stiff_apply(spatial, 1.0, tau, rhs1, true);
      const auto a0u1 = spectral_mass_stiff_apply(spatial, 1.5, tau, u1, false);
      add_scaled(b.block(0), 1.0, a0u1);
      if (n >= 2) add_scaled(b.block(1), -0.5, u0);  // -A_(2) u0, A_(2) = M/2
      if (spec.forcing != Forcing::none) {
        for (std::size_t k = 2; k <= n; ++k)
          add_scaled(b.block(k - 1), tau, evaluate_forcing(spec, spatial, k));
      }
      break;
    }
    case Scheme::wave_two_step: {
      // f_W layout: first equation forces u1 = u0, second carries -M u0.
      const auto a0u0 = spectral_mass_stiff_apply(spatial, 1.0, tau * tau, u0, false);
      add_scaled(b.block(0), 1.0, a0u0);
      if (n >= 2) add_scaled(b.block(1), -1.0, u0);
      if (spec.forcing != Forcing::none) {
        for (std::size_t k = 2; k <= n; ++k)
          add_scaled(b.block(k - 1), tau * tau, evaluate_forcing(spec, spatial, k));
      }
      break;
    }
    case Scheme::wave_central: {
      // Centered system: row k is the scheme at time level k; the known
      // u0 moves into the first block, the final row is truncated.
      add_scaled(b.block(0), -1.0, u0);
      if (spec.forcing != Forcing::none) {
        for (std::size_t k = 1; k <= n; ++k)
          add_scaled(b.block(k - 1), tau * tau, evaluate_forcing(spec, spatial, k));
      }
      break;
    }
  }
  return b;
}

}  // namespace aao

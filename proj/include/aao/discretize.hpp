#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "aao/block_vector.hpp"
#include "aao/transforms.hpp"

namespace aao {

/// Finite-difference Laplacian with coefficient a on a uniform interior
/// grid (homogeneous Dirichlet), held in eigen-decomposed form: the DST
/// basis diagonalizes both the mass matrix (identity here) and the
/// stiffness matrix.
struct SpectralSpatialOperator {
  std::size_t m = 0;   // total spatial unknowns
  SpatialShape shape;  // grid shape, m == shape.total()
  std::vector<double> mass_eigs;   // all 1.0 for finite differences
  std::vector<double> stiff_eigs;  // eigenvalues of K_m, positive
  double h = 0.0;                  // grid spacing
  double a = 0.0;                  // diffusion coefficient
  double domain_length = 0.0;
};

SpectralSpatialOperator build_laplacian_1d(std::size_t m, double a, double L);
/// 2D Kronecker-sum Laplacian on an m1 x m1 grid; eigenvalue at spatial
/// mode index (jy*m1 + jx) is lambda_{jx+1} + lambda_{jy+1} (x fastest).
SpectralSpatialOperator build_laplacian_2d(std::size_t m1, double a, double L);

enum class Scheme { theta, bdf2, wave_two_step, wave_central };
enum class Equation { heat, wave };
enum class InitialData { zero, sine_squared, product_parabola, windowed_cosine };
enum class Forcing { none, constant_one, manufactured_log };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Block Toeplitz time stencil: A_(k) = mu_k * M_m + kappa_k * K_m for
/// k = 0..l. For all schemes but wave_central, A_(0) sits on the block
/// diagonal and the matrix is block lower triangular. wave_central is a
/// centered three-point scheme: A_(1) sits on the diagonal and the
/// assembled matrix is symmetric block tridiagonal.
struct TimeStencil {
  Scheme scheme = Scheme::theta;
  std::size_t l = 1;
  double tau = 0.0;
  double theta = 1.0;  // meaningful for Scheme::theta only
  std::vector<std::pair<double, double>> coeffs;  // (mu_k, kappa_k), k = 0..l

  bool centered() const { return scheme == Scheme::wave_central; }
};

struct ProblemSpec {
  Equation equation = Equation::heat;
  Scheme scheme = Scheme::theta;
  double theta = 1.0;
  int dim = 1;
  std::size_t n = 0;        // time steps
  std::size_t m_plus_1 = 0; // grid intervals per dimension
  double T = 1.0;           // final time
  double a = 1.0;           // diffusion coefficient
  double L = 1.0;           // spatial domain length per dimension
  InitialData initial = InitialData::zero;
  Forcing forcing = Forcing::none;

  std::size_t m1() const { return m_plus_1 - 1; }
  std::size_t m_total() const { return dim == 1 ? m1() : m1() * m1(); }
  double tau() const { return T / static_cast<double>(n); }
};

/// Fill in the paper-example defaults for initial data, forcing and the
/// diffusion coefficient from (equation, dim), leaving explicit settings
/// alone.
void apply_example_defaults(ProblemSpec& spec, bool a_was_set);

TimeStencil make_stencil(const ProblemSpec& spec);

/// Samples the spec's initial function at the interior grid points.
std::vector<double> evaluate_initial(const ProblemSpec& spec,
                                     const SpectralSpatialOperator& spatial);

/// Samples the forcing at grid points and time level t = k*tau.
/// Returns an empty vector when the forcing is identically zero.
std::vector<double> evaluate_forcing(const ProblemSpec& spec,
                                     const SpectralSpatialOperator& spatial,
                                     std::size_t k);

/// Assembles the unpermuted all-at-once right-hand side. Startup terms
/// (initial data, multistep bootstrap) are folded into the leading blocks
/// so the system matrix stays Toeplitz.
BlockVector build_rhs(const ProblemSpec& spec, const SpectralSpatialOperator& spatial,
                      const TimeStencil& stencil);

}  // namespace aao

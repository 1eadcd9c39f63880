#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "aao/block_vector.hpp"
#include "aao/precond.hpp"
#include "aao/toeplitz_ops.hpp"

namespace aao {

using LinOp = std::function<void(const BlockVector&, BlockVector&)>;

struct SolveReport {
  std::size_t iterations = 0;
  /// Recurrence-tracked residual 2-norms ||b - A x_k||, entry 0 is ||b||.
  /// This is the monitored quantity: converged means
  /// residual_history.back() / residual_history.front() <= tol.
  std::vector<double> residual_history;
  /// Native MINRES estimate (phibar recurrence, the M^{-1}-norm of the
  /// residual). Monotonically non-increasing by the minimal-residual
  /// property. Empty for CG-type solves.
  std::vector<double> precond_residual_history;
  /// ||b - A x|| / ||b|| from an explicit matvec at exit.
  double final_true_relres = 0.0;
  bool converged = false;
  double wall_time_seconds = 0.0;
};

/// Preconditioned MINRES (Lanczos three-term recurrence + Givens QR) for a
/// symmetric operator A with SPD preconditioner M. Starts from x0 = 0.
/// Stops when the tracked true relative residual drops below tol.
///
/// A Lanczos breakdown (beta = 0) exhausts the Krylov space; the solver
/// returns with the converged flag re-evaluated from an explicit residual.
/// Throws std::runtime_error if the recurrence produces NaN.
SolveReport minres(const LinOp& apply_A, const LinOp& apply_Minv, const BlockVector& b,
                   BlockVector& x, double tol, std::size_t maxit);

/// Conjugate gradients on the preconditioned normal equations
/// (P^{-1}T)^T (P^{-1}T) u = (P^{-1}T)^T P^{-1} b, monitored in the
/// normal-equation residual norm. Starts from x0 = 0.
SolveReport cgne(const AllAtOnceOperator& op, const SpectralPreconditioner& P,
                 const BlockVector& b, BlockVector& x, double tol, std::size_t maxit);

}  // namespace aao

#include "aao/krylov.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace aao {

namespace {

double explicit_relres(const LinOp& apply_A, const BlockVector& b, const BlockVector& x,
                       double bnorm) {
  BlockVector ax(b.n, b.m);
  apply_A(x, ax);
  axpy(-1.0, b, ax);
  return bnorm > 0.0 ? norm2(ax) / bnorm : norm2(ax);
}

}  // namespace

SolveReport minres(const LinOp& apply_A, const LinOp& apply_Minv, const BlockVector& b,
                   BlockVector& x, double tol, std::size_t maxit) {
  const auto t_start = std::chrono::steady_clock::now();
  SolveReport rep;
  if (!x.same_shape(b)) x = BlockVector(b.n, b.m);
  x.set_zero();

  const double bnorm = norm2(b);
  rep.residual_history.push_back(bnorm);
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
  }

  BlockVector r1 = b;
  BlockVector r2 = b;
  BlockVector y(b.n, b.m);
  apply_Minv(b, y);
  double beta1 = dot(b, y);
  if (beta1 < 0.0) throw std::runtime_error("minres: preconditioner is not positive definite");
  beta1 = std::sqrt(beta1);
  rep.precond_residual_history.push_back(beta1);
  if (beta1 == 0.0) {
    rep.converged = true;
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
  }

  // Lanczos + Givens state (SOL minres layout).
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
  double phibar = beta1, cs = -1.0, sn = 0.0;
  BlockVector v(b.n, b.m), av(b.n, b.m);
  BlockVector w(b.n, b.m), w1(b.n, b.m), w2(b.n, b.m);
  // Tracked residual vector and its A*w companion recurrence.
  BlockVector res = b;
  BlockVector aw(b.n, b.m), aw1(b.n, b.m), aw2(b.n, b.m);

  bool breakdown = false;
  while (rep.iterations < maxit) {
    // v = y / beta; y = A v
    for (std::size_t i = 0; i < v.size(); ++i) v.data[i] = y.data[i] / beta;
    apply_A(v, y);
    av = y;
    if (rep.iterations >= 1) axpy(-beta / oldb, r1, y);
    const double alfa = dot(v, y);
    axpy(-alfa / beta, r2, y);
    std::swap(r1, r2);
    std::swap(r2, y);
    apply_Minv(r2, y);
    oldb = beta;
    double beta_sq = dot(r2, y);
    if (beta_sq < 0.0)
      throw std::runtime_error("minres: preconditioner is not positive definite");
    beta = std::sqrt(beta_sq);

    // Two previous rotations applied to the new column, then a new rotation.
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::sqrt(gbar * gbar + beta * beta);
    if (gamma == 0.0) gamma = 1e-300;
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    // Solution and tracked-residual updates share the same recurrence.
    std::swap(w1, w2);
    std::swap(w2, w);
    std::swap(aw1, aw2);
    std::swap(aw2, aw);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w.data[i] = (v.data[i] - oldeps * w1.data[i] - delta * w2.data[i]) / gamma;
      aw.data[i] = (av.data[i] - oldeps * aw1.data[i] - delta * aw2.data[i]) / gamma;
    }
    axpy(phi, w, x);
    axpy(-phi, aw, res);
    ++rep.iterations;

    const double normr = norm2(res);
    if (!std::isfinite(normr) || !std::isfinite(phibar) || !std::isfinite(beta))
      throw std::runtime_error("minres: NaN/Inf encountered, solve diverged");
    rep.residual_history.push_back(normr);
    rep.precond_residual_history.push_back(std::abs(phibar));

    if (normr / bnorm <= tol) {
      rep.converged = true;
      break;
    }
    if (beta == 0.0) {  // Krylov space exhausted
      breakdown = true;
      break;
    }
  }

  rep.final_true_relres = explicit_relres(apply_A, b, x, bnorm);
  if (breakdown) rep.converged = rep.final_true_relres <= tol;
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

SolveReport cgne(const AllAtOnceOperator& op, const SpectralPreconditioner& P,
                 const BlockVector& b, BlockVector& x, double tol, std::size_t maxit) {
  const auto t_start = std::chrono::steady_clock::now();
  SolveReport rep;
  if (!x.same_shape(b)) x = BlockVector(b.n, b.m);
  x.set_zero();

  // rhs = T^T P^{-2} b
  BlockVector rhs(b.n, b.m), t1(b.n, b.m);
  P.apply_power(b, t1, -2.0);
  op.transpose_matvec(t1, rhs);

  auto apply_N = [&](const BlockVector& in, BlockVector& out) {
    apply_inverse_normal(P, op, in, out);
  };

  const double rhsnorm = norm2(rhs);
  rep.residual_history.push_back(rhsnorm);
  if (rhsnorm == 0.0) {
    rep.converged = true;
    rep.final_true_relres = 0.0;
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
  }

  BlockVector r = rhs;
  BlockVector p = r;
  BlockVector q(b.n, b.m);
  double rs = dot(r, r);

  while (rep.iterations < maxit && std::sqrt(rs) / rhsnorm > tol) {
    apply_N(p, q);
    const double pq = dot(p, q);
    if (!std::isfinite(pq) || pq <= 0.0)
      throw std::runtime_error("cgne: normal operator lost positivity");
    const double alpha = rs / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    const double rs_new = dot(r, r);
    const double beta = rs_new / rs;
    for (std::size_t i = 0; i < p.size(); ++i) p.data[i] = r.data[i] + beta * p.data[i];
    rs = rs_new;
    ++rep.iterations;
    rep.residual_history.push_back(std::sqrt(rs));
  }
  rep.converged = std::sqrt(rs) / rhsnorm <= tol;

  // Report the residual of the original (unpermuted) system as well.
  BlockVector tx(b.n, b.m);
  op.matvec(x, tx);
  axpy(-1.0, b, tx);
  const double bnorm = norm2(b);
  rep.final_true_relres = bnorm > 0.0 ? norm2(tx) / bnorm : norm2(tx);
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

}  // namespace aao

#pragma once

#include <cmath>

#include "ckmeans/types.hpp"

namespace ckmeans {

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Matrix-free conjugate gradient for a symmetric positive (semi)definite
/// operator. Solves op(x) = b starting from the passed-in x, stopping when
/// ||b - op(x)|| <= tol * ||b|| or after max_iter steps; a zero right-hand
/// side short-circuits to the zero solution. Reductions are plain
/// sequential dots, so runs are deterministic.
template <class Op>
CgResult conjugate_gradient(Op&& op, const Vec& b, Vec& x, double tol, int max_iter) {
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    // The unique solution of a definite system with zero right-hand side.
    x.setZero();
    return CgResult{0, 0.0, true};
  }
  const double threshold = tol * b_norm;

  Vec residual = b - op(x);
  double rho = residual.squaredNorm();
  CgResult result;
  if (std::sqrt(rho) <= threshold) {
    result.converged = true;
    result.relative_residual = std::sqrt(rho) / b_norm;
    return result;
  }

  Vec direction = residual;
  Vec op_dir(b.size());
  for (int iter = 0; iter < max_iter; ++iter) {
    op_dir = op(direction);
    const double curvature = direction.dot(op_dir);
    if (curvature <= 0.0) break;  // loss of positive definiteness
    const double alpha = rho / curvature;
    x += alpha * direction;
    residual -= alpha * op_dir;
    const double rho_next = residual.squaredNorm();
    result.iterations = iter + 1;
    if (std::sqrt(rho_next) <= threshold) {
      result.converged = true;
      rho = rho_next;
      break;
    }
    direction = residual + (rho_next / rho) * direction;
    rho = rho_next;
  }
  result.relative_residual = std::sqrt(rho) / b_norm;
  return result;
}

}  // namespace ckmeans

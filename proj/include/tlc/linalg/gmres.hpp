#pragma once

#include <cstddef>
#include <vector>

#include "tlc/linalg/dense_matrix.hpp"
#include "tlc/tolerances.hpp"

namespace tlc {

struct GmresOutcome {
  Vector solution;
  /// Preconditioned residual norms ||M^-1 (b - A x_k)|| from the Arnoldi
  /// least-squares problem, starting with k = 0.
  std::vector<double> residual_history;
  double true_residual = 0.0;  // ||b - A x||
  std::size_t iterations = 0;  // residual_history.size() - 1
  bool converged = false;
  bool stagnated = false;      // Arnoldi breakdown before convergence
};

/// Full (unrestarted) left-preconditioned GMRES on M^-1 A x = M^-1 b with
/// x0 = 0. An empty `apply_m_inv` means no preconditioner. Converged when the
/// preconditioned residual is <= tol * ||M^-1 b||.
GmresOutcome gmres(const LinearOperator& apply_a, const LinearOperator& apply_m_inv,
                   const Vector& b, double tol, std::size_t max_iter,
                   const Tolerances& tols = kTolerances);

}  // namespace tlc

#pragma once

#include <vector>

#include "tlc/errors.hpp"
#include "tlc/linalg/dense_matrix.hpp"
#include "tlc/tolerances.hpp"

namespace tlc {

/// Thrown by eigenvalues() when the QR sweep budget is exhausted. Carries the
/// eigenvalues that did deflate before giving up.
class EigenNoConvergence : public Error {
 public:
  EigenNoConvergence(const std::string& what, std::vector<Complex> partial)
      : Error(ErrorKind::NoConvergence, what), partial_(std::move(partial)) {}
  const std::vector<Complex>& partial_spectrum() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// Unitary reduction to upper Hessenberg form (Householder).
DenseMatrix hessenberg(const DenseMatrix& a);

/// D^-1 A D with D a diagonal of powers of two chosen so off-diagonal row and
/// column norms are comparable. Exact in floating point.
DenseMatrix balance(const DenseMatrix& a);

/// All eigenvalues with algebraic multiplicity; balances first. Hessenberg reduction, then
/// complex single-shift QR with Wilkinson shifts and exceptional shifts when
/// a window stalls.
std::vector<Complex> eigenvalues(const DenseMatrix& a, const Tolerances& tol = kTolerances);

double spectral_radius(const DenseMatrix& a);

struct HermitianEigenpair {
  double value = 0.0;
  Vector vector;  // unit 2-norm
};

struct HermitianDecomposition {
  std::vector<double> values;  // unsorted, aligned with columns of `vectors`
  DenseMatrix vectors;         // unitary
};

/// Cyclic Jacobi diagonalization. `warm_basis`, when given, must be unitary;
/// the sweep starts from warm_basis^H H warm_basis, which converges in a
/// couple of sweeps when the basis is nearly an eigenbasis.
HermitianDecomposition hermitian_eigen(const DenseMatrix& h, const DenseMatrix* warm_basis = nullptr,
                                       const Tolerances& tol = kTolerances);

/// Largest eigenvalue of a Hermitian matrix and a unit eigenvector.
/// Throws Error(NotHermitian) when ||H - H^H|| exceeds the tolerance.
HermitianEigenpair hermitian_extreme_eig(const DenseMatrix& h, const Tolerances& tol = kTolerances);

}  // namespace tlc

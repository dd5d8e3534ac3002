#pragma once

#include <cstddef>
#include <vector>

#include "tlc/linalg/dense_matrix.hpp"
#include "tlc/tolerances.hpp"

namespace tlc {

/// PA = LU with partial pivoting. L (unit diagonal) and U share `lu`.
class LuFactors {
 public:
  LuFactors(DenseMatrix lu, std::vector<std::size_t> permutation, int parity);

  std::size_t size() const noexcept { return lu_.rows(); }
  const DenseMatrix& combined() const noexcept { return lu_; }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
  int parity() const noexcept { return parity_; }

  Vector solve(std::span<const Complex> b) const;
  DenseMatrix solve(const DenseMatrix& b) const;
  DenseMatrix inverse() const;
  Complex determinant() const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;  // row perm_[i] of A is row i of PA
  int parity_;
};

/// Throws Error(SingularMatrix) when a pivot falls below
/// `tol.lu_pivot_relative * ||A||_inf`.
LuFactors lu_factor(const DenseMatrix& a, const Tolerances& tol = kTolerances);

/// Convenience: lu_factor(a).solve(b).
Vector lu_solve(const DenseMatrix& a, std::span<const Complex> b);

}  // namespace tlc

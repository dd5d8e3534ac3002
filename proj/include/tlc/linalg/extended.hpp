#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tlc/linalg/dense_matrix.hpp"
#include "tlc/linalg/lu.hpp"
#include "tlc/tolerances.hpp"

namespace tlc {

using ExtComplex = std::complex<long double>;

/// Row-major long double complex matrix. Only what the extended spectrum
/// path needs: products, sums, and solves refined against a double LU.
class ExtMatrix {
 public:
  using value_type = ExtComplex;

  ExtMatrix() = default;
  ExtMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  explicit ExtMatrix(const DenseMatrix& a);

  static ExtMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  ExtComplex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const ExtComplex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  ExtMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ExtMatrix& b);
  ExtMatrix transpose() const;
  DenseMatrix rounded() const;
  long double norm_fro() const;

  ExtMatrix& operator+=(const ExtMatrix& o);
  ExtMatrix& operator-=(const ExtMatrix& o);
  ExtMatrix& operator*=(ExtComplex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExtComplex> entries_;
};

ExtMatrix operator+(ExtMatrix a, const ExtMatrix& b);
ExtMatrix operator-(ExtMatrix a, const ExtMatrix& b);
ExtMatrix operator*(ExtComplex s, ExtMatrix a);
ExtMatrix operator*(const ExtMatrix& a, const ExtMatrix& b);

/// X with A X = B. Starts from the double solve with `lu` (factors of A
/// rounded to double) and refines with long double residuals until the
/// correction stalls or `max_sweeps` is reached.
ExtMatrix refined_solve(const ExtMatrix& a, const LuFactors& lu, const ExtMatrix& b, int max_sweeps = 6);

/// Balancing, Hessenberg reduction and shifted QR in long double; results
/// rounded to double.
std::vector<Complex> eigenvalues_extended(const ExtMatrix& a, const Tolerances& tol = kTolerances);

}  // namespace tlc

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace tlc {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// A linear map on vectors of a fixed dimension.
using LinearOperator = std::function<Vector(const Vector&)>;

/// Dense complex matrix stored row-major.
class DenseMatrix {
 public:
  using value_type = Complex;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static DenseMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<Complex> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Complex> values);

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b);

  DenseMatrix adjoint() const;
  DenseMatrix transpose() const;

  double norm_inf() const;  // max row sum
  double norm_one() const;  // max column sum
  double norm_fro() const;
  double max_abs() const;
  Complex trace() const;
  bool all_finite() const;

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator-=(const DenseMatrix& o);
  DenseMatrix& operator*=(Complex s);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(Complex s, DenseMatrix a);
/// Skips zero entries of the left factor, so products with sparse-pattern
/// left operands (stencils, smoothers) cost O(nnz * cols).
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const Complex> x);

/// Standard Kronecker product, dimensions (rA rB) x (cA cB).
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Column j of the result is op(e_j).
DenseMatrix materialize(const LinearOperator& op, std::size_t dim);

// Vector helpers.
double norm2(std::span<const Complex> x);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);  // x^H y
Vector add(std::span<const Complex> x, std::span<const Complex> y);
Vector sub(std::span<const Complex> x, std::span<const Complex> y);
Vector scaled(Complex s, std::span<const Complex> x);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
Vector kron(std::span<const Complex> x, std::span<const Complex> y);
Vector unit_vector(std::size_t n, std::size_t k);

}  // namespace tlc

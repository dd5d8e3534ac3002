#include "tlc/linalg/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "tlc/errors.hpp"

namespace tlc {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorKind::SizeMismatch, "entry count does not match rows*cols");
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::SizeMismatch, "ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const Complex> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void DenseMatrix::set_column(std::size_t j, std::span<const Complex> values) {
  if (values.size() != rows_) throw Error(ErrorKind::SizeMismatch, "set_column length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::SizeMismatch, "block out of range");
  DenseMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                b.entries_.begin() + static_cast<std::ptrdiff_t>(i * nc));
  }
  return b;
}

void DenseMatrix::set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
    throw Error(ErrorKind::SizeMismatch, "set_block out of range");
  }
  for (std::size_t i = 0; i < b.rows_; ++i) {
    std::copy_n(b.entries_.begin() + static_cast<std::ptrdiff_t>(i * b.cols_), b.cols_,
                entries_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0));
  }
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (const auto& v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double DenseMatrix::norm_one() const {
  std::vector<double> sums(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) sums[j] += std::abs((*this)(i, j));
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double DenseMatrix::norm_fro() const { return norm2(entries_); }

double DenseMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& v : entries_) best = std::max(best, std::abs(v));
  return best;
}

Complex DenseMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::SizeMismatch, "operator+=");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::SizeMismatch, "operator-=");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(Complex s) {
  for (auto& v : entries_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(Complex s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::SizeMismatch, "matrix product shapes");
  DenseMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector operator*(const DenseMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::SizeMismatch, "matrix-vector shapes");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s{};
    const auto ai = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

DenseMatrix materialize(const LinearOperator& op, std::size_t dim) {
  DenseMatrix m;
  for (std::size_t j = 0; j < dim; ++j) {
    const Vector col = op(unit_vector(dim, j));
    if (j == 0) m = DenseMatrix(col.size(), dim);
    m.set_column(j, col);
  }
  return m;
}

double norm2(std::span<const Complex> x) {
  // Scaled accumulation keeps tiny and huge entries representable.
  double scale = 0.0;
  for (const auto& v : x) scale = std::max(scale, std::max(std::abs(v.real()), std::abs(v.imag())));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v / scale);
  return scale * std::sqrt(s);
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::SizeMismatch, "dot");
  Complex s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

Vector add(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::SizeMismatch, "add");
  Vector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

Vector sub(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::SizeMismatch, "sub");
  Vector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

Vector scaled(Complex s, std::span<const Complex> x) {
  Vector z(x.begin(), x.end());
  for (auto& v : z) v *= s;
  return z;
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::SizeMismatch, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vector kron(std::span<const Complex> x, std::span<const Complex> y) {
  Vector z;
  z.reserve(x.size() * y.size());
  for (const auto& a : x)
    for (const auto& b : y) z.push_back(a * b);
  return z;
}

Vector unit_vector(std::size_t n, std::size_t k) {
  Vector e(n);
  e.at(k) = 1.0;
  return e;
}

}  // namespace tlc

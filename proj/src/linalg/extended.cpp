#include "tlc/linalg/extended.hpp"

#include <cmath>
#include <limits>

#include "qr_impl.hpp"
#include "tlc/errors.hpp"

namespace tlc {

ExtMatrix::ExtMatrix(const DenseMatrix& a) : ExtMatrix(a.rows(), a.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = ExtComplex(a(i, j).real(), a(i, j).imag());
}

ExtMatrix ExtMatrix::identity(std::size_t n) {
  ExtMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0L;
  return out;
}

ExtMatrix ExtMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::SizeMismatch, "block out of range");
  ExtMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void ExtMatrix::set_block(std::size_t r0, std::size_t c0, const ExtMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw Error(ErrorKind::SizeMismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

ExtMatrix ExtMatrix::transpose() const {
  ExtMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

DenseMatrix ExtMatrix::rounded() const {
  DenseMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const ExtComplex z = (*this)(i, j);
      out(i, j) = Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
  return out;
}

long double ExtMatrix::norm_fro() const {
  long double s = 0.0L;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

ExtMatrix& ExtMatrix::operator+=(const ExtMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw Error(ErrorKind::SizeMismatch, "ExtMatrix +");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

ExtMatrix& ExtMatrix::operator-=(const ExtMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw Error(ErrorKind::SizeMismatch, "ExtMatrix -");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

ExtMatrix& ExtMatrix::operator*=(ExtComplex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

ExtMatrix operator+(ExtMatrix a, const ExtMatrix& b) { return a += b; }
ExtMatrix operator-(ExtMatrix a, const ExtMatrix& b) { return a -= b; }
ExtMatrix operator*(ExtComplex s, ExtMatrix a) { return a *= s; }

ExtMatrix operator*(const ExtMatrix& a, const ExtMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::SizeMismatch, "ExtMatrix product shapes");
  ExtMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const ExtComplex aik = a(i, k);
      if (aik == ExtComplex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ExtMatrix refined_solve(const ExtMatrix& a, const LuFactors& lu, const ExtMatrix& b, int max_sweeps) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || lu.size() != a.rows()) {
    throw Error(ErrorKind::SizeMismatch, "refined_solve shapes");
  }
  ExtMatrix x(lu.solve(b.rounded()));
  long double last = std::numeric_limits<long double>::infinity();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const ExtMatrix r = b - a * x;
    const ExtMatrix dx(lu.solve(r.rounded()));
    x += dx;
    const long double size = dx.norm_fro();
    // Stop once the correction is at long double rounding level or grows.
    if (size <= std::numeric_limits<long double>::epsilon() * x.norm_fro() || size >= last) break;
    last = size;
  }
  return x;
}

std::vector<Complex> eigenvalues_extended(const ExtMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "eigenvalues needs a square matrix");
  ExtMatrix h = a;
  detail::balance_in_place(h);
  detail::hessenberg_in_place(h);
  std::vector<Complex> out;
  for (const auto& z : detail::hessenberg_qr(std::move(h), tol)) {
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

}  // namespace tlc

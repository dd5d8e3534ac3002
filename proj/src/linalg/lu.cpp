#include "tlc/linalg/lu.hpp"

#include <cmath>
#include <numeric>

#include "tlc/errors.hpp"

namespace tlc {

LuFactors::LuFactors(DenseMatrix lu, std::vector<std::size_t> permutation, int parity)
    : lu_(std::move(lu)), perm_(std::move(permutation)), parity_(parity) {}

Vector LuFactors::solve(std::span<const Complex> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error(ErrorKind::SizeMismatch, "LU solve right-hand side length");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = x[i];
    const auto li = lu_.row(i);
    for (std::size_t j = 0; j < i; ++j) s -= li[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex s = x[i];
    const auto ui = lu_.row(i);
    for (std::size_t j = i + 1; j < n; ++j) s -= ui[j] * x[j];
    x[i] = s / ui[i];
  }
  return x;
}

DenseMatrix LuFactors::solve(const DenseMatrix& b) const {
  DenseMatrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_column(j, solve(b.column(j)));
  return x;
}

DenseMatrix LuFactors::inverse() const { return solve(DenseMatrix::identity(size())); }

Complex LuFactors::determinant() const {
  Complex det = static_cast<double>(parity_);
  for (std::size_t i = 0; i < size(); ++i) det *= lu_(i, i);
  return det;
}

LuFactors lu_factor(const DenseMatrix& a, const Tolerances& tol) {
  if (!a.square()) throw Error(ErrorKind::InvalidArgument, "lu_factor needs a square matrix");
  if (!a.all_finite()) throw Error(ErrorKind::InvalidArgument, "lu_factor: non-finite entries");
  const std::size_t n = a.rows();
  DenseMatrix lu = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  int parity = 1;
  const double threshold = tol.lu_pivot_relative * a.norm_inf();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= threshold || best == 0.0) {
      throw Error(ErrorKind::SingularMatrix,
                  "pivot " + std::to_string(best) + " at column " + std::to_string(k));
    }
    if (piv != k) {
      auto rk = lu.row(k);
      auto rp = lu.row(piv);
      std::swap_ranges(rk.begin(), rk.end(), rp.begin());
      std::swap(perm[k], perm[piv]);
      parity = -parity;
    }
    const Complex pivot = lu(k, k);
    const auto rk = lu.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = lu.row(i);
      const Complex l = ri[k] / pivot;
      ri[k] = l;
      if (l == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
    }
  }
  return LuFactors(std::move(lu), std::move(perm), parity);
}

Vector lu_solve(const DenseMatrix& a, std::span<const Complex> b) { return lu_factor(a).solve(b); }

}  // namespace tlc

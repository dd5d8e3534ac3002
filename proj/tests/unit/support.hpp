#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "tlc/linalg.hpp"
#include "tlc/problems.hpp"

namespace testing {

using tlc::Complex;
using tlc::DenseMatrix;
using tlc::Vector;

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline Vector random_vector(std::size_t n, std::uint64_t seed) {
  tlc::problems::NormalSource normals(seed);
  Vector v(n);
  for (auto& z : v) z = {normals.next(), normals.next()};
  return v;
}

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  tlc::problems::NormalSource normals(seed);
  return tlc::problems::random_complex_matrix(rows, cols, normals);
}

// Sorted by real part, then imaginary part.
inline std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return v;
}

// Every entry of `got` within tol of some entry of `want`, and vice versa.
inline bool same_multiset(std::vector<Complex> got, std::vector<Complex> want, double tol) {
  if (got.size() != want.size()) return false;
  std::vector<bool> used(want.size(), false);
  for (Complex z : got) {
    std::size_t best = want.size();
    for (std::size_t k = 0; k < want.size(); ++k) {
      if (used[k]) continue;
      if (best == want.size() || std::abs(z - want[k]) < std::abs(z - want[best])) best = k;
    }
    if (best == want.size() || std::abs(z - want[best]) > tol) return false;
    used[best] = true;
  }
  return true;
}

}  // namespace testing

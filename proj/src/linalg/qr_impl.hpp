#pragma once

// Balancing, Hessenberg reduction and shifted QR, generic over the matrix
// type so the same code runs in double and in long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "tlc/linalg/eigen.hpp"

namespace tlc::detail {

template <class C>
struct Givens {
  typename C::value_type c{1};
  C s{};
};

// G = [[c, s], [-conj(s), c]] maps (a, b) to (r, 0).
template <class C>
Givens<C> make_givens(C a, C b) {
  using R = typename C::value_type;
  if (b == C{}) return {};
  const R abs_a = std::abs(a);
  const R abs_b = std::abs(b);
  if (abs_a == R{0}) return {R{0}, std::conj(b) / abs_b};
  const R r = std::hypot(abs_a, abs_b);
  return {abs_a / r, (a / abs_a) * std::conj(b) / r};
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
template <class C>
C wilkinson_shift(C a, C b, C c, C d) {
  using R = typename C::value_type;
  const C half_diff = R{0.5} * (a - d);
  const C disc = std::sqrt(half_diff * half_diff + b * c);
  const C mid = R{0.5} * (a + d);
  const C l1 = mid + disc;
  const C l2 = mid - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

template <class C>
typename C::value_type scaled_norm(const std::vector<C>& x) {
  using R = typename C::value_type;
  R big{0};
  for (const auto& z : x) big = std::max(big, std::abs(z));
  if (big == R{0}) return big;
  R s{0};
  for (const auto& z : x) s += std::norm(z / big);
  return big * std::sqrt(s);
}

template <class M>
void balance_in_place(M& b) {
  using R = typename M::value_type::value_type;
  const std::size_t n = b.rows();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      R c{0}, r{0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(b(j, i));
        r += std::abs(b(i, j));
      }
      if (c == R{0} || r == R{0}) continue;
      const R s = c + r;
      R f{1};
      while (c < r / 2) {
        c *= 2;
        r /= 2;
        f *= 2;
      }
      while (c >= r * 2) {
        c /= 2;
        r *= 2;
        f /= 2;
      }
      if (c + r < R{0.95} * s) {
        changed = true;
        for (std::size_t j = 0; j < n; ++j) b(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) b(j, i) *= f;
      }
    }
  }
}

template <class M>
void hessenberg_in_place(M& h) {
  using C = typename M::value_type;
  using R = typename C::value_type;
  const std::size_t n = h.rows();
  std::vector<C> v(n);
  std::vector<C> s(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::vector<C> x(n - k - 1);
    for (std::size_t i = k + 1; i < n; ++i) x[i - k - 1] = h(i, k);
    const R alpha = scaled_norm(x);
    if (alpha == R{0}) continue;
    const C x0 = h(k + 1, k);
    const C phase = std::abs(x0) == R{0} ? C{1} : x0 / std::abs(x0);
    std::fill(v.begin(), v.end(), C{});
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * alpha;
    const R vn = scaled_norm(v);
    for (auto& z : v) z /= vn;

    // H <- (I - 2 v v^H) H, rows k+1.., columns k..
    std::fill(s.begin(), s.end(), C{});
    for (std::size_t i = k + 1; i < n; ++i) {
      const C cv = std::conj(v[i]);
      for (std::size_t j = k; j < n; ++j) s[j] += cv * h(i, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const C f = R{2} * v[i];
      for (std::size_t j = k; j < n; ++j) h(i, j) -= f * s[j];
    }
    // H <- H (I - 2 v v^H), all rows, columns k+1..
    for (std::size_t i = 0; i < n; ++i) {
      C t{};
      for (std::size_t j = k + 1; j < n; ++j) t += h(i, j) * v[j];
      t *= R{2};
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= t * std::conj(v[j]);
    }
    h(k + 1, k) = -phase * alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = C{};
  }
}

// Eigenvalues of an upper Hessenberg matrix, in deflation order.
template <class M>
std::vector<typename M::value_type> hessenberg_qr(M h, const Tolerances& tol) {
  using C = typename M::value_type;
  using R = typename C::value_type;
  constexpr R eps = std::numeric_limits<R>::epsilon();
  const std::size_t n = h.rows();
  std::vector<C> found;
  found.reserve(n);
  if (n == 0) return found;

  R hnorm{0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) hnorm += std::norm(h(i, j));
  hnorm = std::max(std::sqrt(hnorm), std::numeric_limits<R>::min());
  const std::size_t max_sweeps = tol.qr_sweeps_per_dimension * n;
  std::size_t sweeps = 0;
  std::size_t stalled = 0;
  std::vector<Givens<C>> rotations(n);

  std::size_t hi = n - 1;
  while (true) {
    // Find the start of the unreduced block ending at hi.
    std::size_t lo = hi;
    while (lo > 0) {
      R scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (scale == R{0}) scale = hnorm;
      if (std::abs(h(lo, lo - 1)) <= eps * scale) {
        h(lo, lo - 1) = C{};
        break;
      }
      --lo;
    }
    if (lo == hi) {
      found.push_back(h(hi, hi));
      stalled = 0;
      if (hi == 0) break;
      --hi;
      continue;
    }

    if (++sweeps > max_sweeps) {
      std::vector<Complex> partial;
      for (const auto& z : found) partial.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
      throw EigenNoConvergence("QR iteration exceeded " + std::to_string(max_sweeps) + " sweeps", partial);
    }
    ++stalled;

    C shift;
    if (stalled % tol.qr_exceptional_shift_every == 0) {
      const R bump = std::abs(h(hi, hi - 1).real()) + (hi >= 2 ? std::abs(h(hi - 1, hi - 2).real()) : R{0});
      shift = h(hi, hi) + C(bump, R{0.5} * bump);
    } else {
      shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= shift;
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens<C> g = make_givens(h(k, k), h(k + 1, k));
      rotations[k] = g;
      for (std::size_t j = k; j <= hi; ++j) {
        const C x = h(k, j);
        const C y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
      h(k + 1, k) = C{};
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens<C>& g = rotations[k];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const C x = h(i, k);
        const C y = h(i, k + 1);
        h(i, k) = x * g.c + y * std::conj(g.s);
        h(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += shift;
  }
  return found;
}

}  // namespace tlc::detail

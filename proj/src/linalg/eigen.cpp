#include "tlc/linalg/eigen.hpp"

#include "qr_impl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tlc {

DenseMatrix hessenberg(const DenseMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::InvalidArgument, "hessenberg needs a square matrix");
  DenseMatrix h = a;
  detail::hessenberg_in_place(h);
  return h;
}

DenseMatrix balance(const DenseMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::InvalidArgument, "balance needs a square matrix");
  DenseMatrix b = a;
  detail::balance_in_place(b);
  return b;
}

std::vector<Complex> eigenvalues(const DenseMatrix& a, const Tolerances& tol) {
  if (!a.square()) throw Error(ErrorKind::InvalidArgument, "eigenvalues needs a square matrix");
  if (!a.all_finite()) throw Error(ErrorKind::InvalidArgument, "eigenvalues: non-finite entries");
  return detail::hessenberg_qr(hessenberg(balance(a)), tol);
}

double spectral_radius(const DenseMatrix& a) {
  double r = 0.0;
  for (const auto& z : eigenvalues(a)) r = std::max(r, std::abs(z));
  return r;
}

HermitianDecomposition hermitian_eigen(const DenseMatrix& h_in, const DenseMatrix* warm_basis,
                                       const Tolerances& tol) {
  if (!h_in.square()) throw Error(ErrorKind::InvalidArgument, "hermitian_eigen needs a square matrix");
  const std::size_t n = h_in.rows();
  const double scale = h_in.norm_fro();
  {
    const double asym = (h_in - h_in.adjoint()).norm_fro();
    if (asym > tol.hermitian_check_relative * std::max(scale, 1e-300)) {
      throw Error(ErrorKind::NotHermitian, "||H - H^H||_F = " + std::to_string(asym));
    }
  }

  DenseMatrix h = h_in;
  DenseMatrix v = DenseMatrix::identity(n);
  if (warm_basis != nullptr) {
    v = *warm_basis;
    h = v.adjoint() * (h_in * v);
  }
  // Symmetrize exactly; rotations below preserve the property.
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  }

  auto offdiag = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(h(i, j));
    return std::sqrt(s);
  };
  const double target = tol.jacobi_offdiag_relative * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < 100 && offdiag() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = h(p, q);
        const double abs_g = std::abs(g);
        if (abs_g == 0.0) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        // Phase-rotate to a real off-diagonal, then a real Jacobi rotation.
        const Complex phase = g / abs_g;
        const double zeta = (aqq - app) / (2.0 * abs_g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns (p, q).
        const Complex j00 = c;
        const Complex j01 = s;
        const Complex j10 = -s * std::conj(phase);
        const Complex j11 = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = h(k, p);
          const Complex y = h(k, q);
          h(k, p) = x * j00 + y * j10;
          h(k, q) = x * j01 + y * j11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = h(p, k);
          const Complex y = h(q, k);
          h(p, k) = std::conj(j00) * x + std::conj(j10) * y;
          h(q, k) = std::conj(j01) * x + std::conj(j11) * y;
        }
        h(p, q) = Complex{};
        h(q, p) = Complex{};
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = v(k, p);
          const Complex y = v(k, q);
          v(k, p) = x * j00 + y * j10;
          v(k, q) = x * j01 + y * j11;
        }
      }
    }
  }
  if (offdiag() > target) {
    throw Error(ErrorKind::NoConvergence, "Jacobi sweeps did not reduce the off-diagonal");
  }

  HermitianDecomposition out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = h(i, i).real();
  out.vectors = std::move(v);
  return out;
}

HermitianEigenpair hermitian_extreme_eig(const DenseMatrix& h, const Tolerances& tol) {
  const auto dec = hermitian_eigen(h, nullptr, tol);
  if (dec.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  const auto it = std::max_element(dec.values.begin(), dec.values.end());
  const auto k = static_cast<std::size_t>(it - dec.values.begin());
  Vector w = dec.vectors.column(k);
  const double nw = norm2(w);
  for (auto& z : w) z /= nw;
  return {*it, std::move(w)};
}

}  // namespace tlc

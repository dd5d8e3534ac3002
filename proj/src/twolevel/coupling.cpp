#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "tlc/twolevel.hpp"

namespace tlc::twolevel {

namespace {

// Deterministic, well-spread start vectors for inverse iteration.
Vector start_vector(std::size_t n, std::size_t k) {
  Vector x(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL * (k + 1);
  for (auto& v : x) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    const double re = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
    const double im = static_cast<double>((z * 0x2545f4914f6cdd1dULL) >> 11) * 0x1.0p-53 - 0.5;
    v = {re, im};
  }
  return x;
}

void normalize(Vector& x) {
  const double nx = norm2(x);
  if (nx > 0.0) {
    for (auto& v : x) v /= nx;
  }
}

void orthogonalize(Vector& y, const std::vector<const Vector*>& against) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector* q : against) axpy(-dot(*q, y), *q, y);
  }
}

Vector inverse_iteration(const DenseMatrix& t, Complex lambda, std::size_t k,
                         const std::vector<const Vector*>& cluster, const Tolerances& tol) {
  const std::size_t n = t.rows();
  const double t_norm = std::max(t.norm_inf(), std::numeric_limits<double>::min());
  const double shift_scale = tol.inverse_iteration * std::max(t_norm, 1.0);

  LuFactors lu = [&] {
    double eps = shift_scale;
    for (int attempt = 0;; ++attempt) {
      DenseMatrix shifted = t;
      const Complex sigma = lambda + Complex(eps, eps);
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= sigma;
      try {
        return lu_factor(shifted, tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularMatrix || attempt >= 8) throw;
        eps *= 10.0;
      }
    }
  }();

  Vector w = start_vector(n, k);
  orthogonalize(w, cluster);
  normalize(w);
  for (int it = 0; it < 12; ++it) {
    Vector y = lu.solve(w);
    orthogonalize(y, cluster);
    normalize(y);
    w = std::move(y);
    const Vector r = sub(t * w, scaled(lambda, w));
    if (norm2(r) <= 1e-12 * t_norm) break;
  }
  return w;
}

}  // namespace

CouplingAnalysis coupling_analysis(const BlockSystem& sys, const Tolerances& tol) {
  const std::size_t n1 = sys.n1();
  const std::size_t n2 = sys.n2();
  CouplingAnalysis out;
  const DenseMatrix d_inv_c = sys.d_lu().solve(sys.c());
  out.T = sys.a_lu().solve(sys.b() * d_inv_c);

  const std::vector<Complex> lambdas = eigenvalues(out.T, tol);
  const double t_norm = out.T.norm_inf();
  const double cluster_radius = tol.cluster_library * std::max(t_norm, 1.0);

  DenseMatrix w_matrix(n1, n1);
  out.pairs.reserve(n1);
  for (std::size_t k = 0; k < n1; ++k) {
    std::vector<const Vector*> cluster;
    for (const auto& p : out.pairs) {
      if (std::abs(p.lambda - lambdas[k]) <= cluster_radius) cluster.push_back(&p.w);
    }
    CouplingEigenpair pair;
    pair.lambda = lambdas[k];
    pair.w = inverse_iteration(out.T, lambdas[k], k, cluster, tol);
    pair.v1 = pair.w;
    pair.v1.resize(n1 + n2);
    pair.v2.assign(n1, Complex{});
    const Vector dcw = d_inv_c * pair.w;
    pair.v2.insert(pair.v2.end(), dcw.begin(), dcw.end());
    w_matrix.set_column(k, pair.w);
    out.pairs.push_back(std::move(pair));
  }

  try {
    const DenseMatrix w_inv = lu_factor(w_matrix, tol).inverse();
    out.eigvec_condition = w_matrix.norm_one() * w_inv.norm_one();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix) throw;
    out.eigvec_condition = 1.0 / std::numeric_limits<double>::epsilon();
  }
  // Orthogonalizing inside an exactly repeated eigenvalue keeps W well
  // conditioned even when T is defective; the eigen-residual catches that.
  double worst_residual = 0.0;
  for (const auto& p : out.pairs) {
    worst_residual = std::max(worst_residual, norm2(sub(out.T * p.w, scaled(p.lambda, p.w))));
  }
  if (worst_residual > tol.cluster_library * std::max(t_norm, 1.0)) {
    std::ostringstream msg;
    msg << "DiagnosabilityWarning: eigenvector residual " << worst_residual << " for T with norm " << t_norm
        << "; T may be defective";
    out.warnings.push_back(msg.str());
  }
  if (!(out.eigvec_condition <= tol.diagonalizability_warning)) {
    std::ostringstream msg;
    msg << "DiagnosabilityWarning: eigenvector condition number " << out.eigvec_condition
        << " exceeds " << tol.diagonalizability_warning << "; T may be defective";
    out.warnings.push_back(msg.str());
  }
  return out;
}

double invariant_check(const BlockSystem& sys, const CouplingAnalysis& analysis, double alpha) {
  const TwoLevelComponents comp = exact_components(sys);
  const DenseMatrix es = smoother_error(sys, comp, alpha);
  const DenseMatrix ec = coarse_error(sys, comp);
  double worst = 0.0;
  for (const auto& p : analysis.pairs) {
    const Complex lam = p.lambda;
    const double scale = (1.0 + std::abs(lam)) * (norm2(p.v1) + norm2(p.v2));
    if (scale == 0.0) continue;
    const Vector es_v1 = es * p.v1;
    const Vector es_v2 = es * p.v2;
    const Vector ec_v1 = ec * p.v1;
    const Vector ec_v2 = ec * p.v2;
    const Vector r1 = sub(es_v1, add(scaled(1.0 - alpha, p.v1), scaled(-alpha, p.v2)));
    const Vector r2 = sub(es_v2, add(scaled(-alpha * lam, p.v1), scaled(1.0 - alpha, p.v2)));
    const Vector r3 = sub(ec_v1, p.v1);
    const Vector r4 = sub(ec_v2, scaled(lam, p.v1));
    for (const Vector* r : {&r1, &r2, &r3, &r4}) worst = std::max(worst, norm2(*r) / scale);
  }
  return worst;
}

Complex restricted_response(const DenseMatrix& error_op, const CouplingEigenpair& pair) {
  const Vector e1 = error_op * pair.v1;
  const double n1 = norm2(pair.v1);
  const double n2 = norm2(pair.v2);
  if (n2 <= 1e-12 * n1) {
    // v2 vanishes: the subspace is one-dimensional.
    return dot(pair.v1, e1) / (n1 * n1);
  }
  const Vector e2 = error_op * pair.v2;
  // Least-squares G with V G = E V, V = [v1 v2]: G = (V^H V)^-1 V^H E V.
  const Complex g11 = dot(pair.v1, pair.v1), g12 = dot(pair.v1, pair.v2);
  const Complex g21 = dot(pair.v2, pair.v1), g22 = dot(pair.v2, pair.v2);
  const Complex h11 = dot(pair.v1, e1), h12 = dot(pair.v1, e2);
  const Complex h21 = dot(pair.v2, e1), h22 = dot(pair.v2, e2);
  const Complex det = g11 * g22 - g12 * g21;
  const Complex a = (g22 * h11 - g12 * h21) / det;
  const Complex b = (g22 * h12 - g12 * h22) / det;
  const Complex c = (-g21 * h11 + g11 * h21) / det;
  const Complex d = (-g21 * h12 + g11 * h22) / det;
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(half_tr * half_tr - (a * d - b * c));
  const Complex mu1 = half_tr + disc;
  const Complex mu2 = half_tr - disc;
  return std::abs(mu1) >= std::abs(mu2) ? mu1 : mu2;
}

}  // namespace tlc::twolevel

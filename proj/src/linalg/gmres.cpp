#include "tlc/linalg/gmres.hpp"

#include <cmath>

#include "tlc/errors.hpp"

namespace tlc {

namespace {

struct Rotation {
  double c = 1.0;
  Complex s{};
};

Rotation rotation_zeroing(Complex a, Complex b) {
  if (b == Complex{}) return {};
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  if (abs_a == 0.0) return {0.0, std::conj(b) / abs_b};
  const double r = std::hypot(abs_a, abs_b);
  return {abs_a / r, (a / abs_a) * std::conj(b) / r};
}

void rotate(const Rotation& g, Complex& x, Complex& y) {
  const Complex a = x;
  const Complex b = y;
  x = g.c * a + g.s * b;
  y = -std::conj(g.s) * a + g.c * b;
}

}  // namespace

GmresOutcome gmres(const LinearOperator& apply_a, const LinearOperator& apply_m_inv,
                   const Vector& b, double tol, std::size_t max_iter, const Tolerances& tols) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "gmres tolerance must be positive");
  const auto precondition = [&](const Vector& v) { return apply_m_inv ? apply_m_inv(v) : v; };
  const std::size_t n = b.size();

  GmresOutcome out;
  out.solution.assign(n, Complex{});
  const Vector r0 = precondition(b);
  const double beta = norm2(r0);
  out.residual_history.push_back(beta);
  if (beta == 0.0) {
    out.converged = true;
    out.true_residual = norm2(b);
    return out;
  }

  std::vector<Vector> basis;
  basis.push_back(scaled(1.0 / beta, r0));
  std::vector<Vector> hcols;  // hcols[k] has k+2 entries, rotated in place
  std::vector<Rotation> rotations;
  Vector g{beta};

  for (std::size_t k = 0; k < max_iter; ++k) {
    Vector w = precondition(apply_a(basis[k]));
    const double w_norm_initial = norm2(w);
    Vector h(k + 2);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j <= k; ++j) {
        const Complex hj = dot(basis[j], w);
        h[j] += hj;
        axpy(-hj, basis[j], w);
      }
    }
    const double h_next = norm2(w);
    h[k + 1] = h_next;
    for (std::size_t j = 0; j < k; ++j) rotate(rotations[j], h[j], h[j + 1]);
    const Rotation rot = rotation_zeroing(h[k], h[k + 1]);
    rotate(rot, h[k], h[k + 1]);
    rotations.push_back(rot);
    g.push_back(Complex{});
    rotate(rot, g[k], g[k + 1]);
    hcols.push_back(std::move(h));

    const double res = std::abs(g[k + 1]);
    out.residual_history.push_back(res);
    if (res <= tol * beta) {
      out.converged = true;
      break;
    }
    if (h_next <= tols.gmres_breakdown * w_norm_initial || h_next == 0.0) {
      out.stagnated = true;
      break;
    }
    basis.push_back(scaled(1.0 / h_next, w));
  }

  const std::size_t k = hcols.size();
  Vector y(k);
  for (std::size_t i = k; i-- > 0;) {
    Complex s = g[i];
    for (std::size_t j = i + 1; j < k; ++j) s -= hcols[j][i] * y[j];
    y[i] = s / hcols[i][i];
  }
  for (std::size_t j = 0; j < k; ++j) axpy(y[j], basis[j], out.solution);
  out.iterations = out.residual_history.size() - 1;
  out.true_residual = norm2(sub(b, apply_a(out.solution)));
  return out;
}

}  // namespace tlc

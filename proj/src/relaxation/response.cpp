#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tlc/errors.hpp"
#include "tlc/relaxation.hpp"

namespace tlc::relaxation {

namespace {

using LComplex = std::complex<long double>;

// Weights for the closed form. Theorem weights are recomputed from m in long
// double: rounding them to double alone moves r_m by ~1e-10 at m = 6.
std::vector<long double> closed_form_weights(const RelaxationSchedule& s) {
  std::vector<long double> w;
  if (s.source == ScheduleSource::theorem) {
    const long double denom = 2.0L * static_cast<long double>(s.m) + 1.0L;
    for (std::size_t j = 1; j <= s.m; ++j) {
      w.push_back(1.0L / (1.0L - std::cos(2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) / denom)));
    }
  } else {
    w.assign(s.alphas.begin(), s.alphas.end());
  }
  return w;
}

// Sum of the two weighted products; symmetric under tau -> -tau term by term.
Complex closed_form(const std::vector<long double>& alphas, Complex tau_d) {
  const LComplex tau(tau_d.real(), tau_d.imag());
  LComplex minus_prod = 1.0L;
  LComplex plus_prod = 1.0L;
  for (long double a : alphas) {
    const LComplex lo = (1.0L - a) - a * tau;
    const LComplex hi = (1.0L - a) + a * tau;
    minus_prod *= lo * lo;
    plus_prod *= hi * hi;
  }
  const LComplex v = 0.5L * (1.0L + tau) * minus_prod + 0.5L * (1.0L - tau) * plus_prod;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex ipow(Complex x, std::size_t k) {
  Complex r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

bool on_branch_cut(Complex lambda) { return lambda.imag() == 0.0 && lambda.real() <= 0.0; }

double block_scale(const Matrix2& x) {
  double s = 0.0;
  for (const auto& r : x)
    for (const auto& v : r) s = std::max(s, std::abs(v));
  return std::max(s, 1.0);
}

void check_close(const Matrix2& x, const Matrix2& y, double tol, const char* what) {
  const double scale = std::max(block_scale(x), block_scale(y));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(x[i][j] - y[i][j]) > tol * scale) throw std::logic_error(what);
}

}  // namespace

Matrix2 scaled_smoother_block(double alpha, Complex tau) {
  return {{{1.0 - alpha, -alpha * tau}, {-alpha * tau, 1.0 - alpha}}};
}

Matrix2 multiply(const Matrix2& x, const Matrix2& y) {
  Matrix2 z{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return z;
}

ResponseSample scalar_response_closed(const RelaxationSchedule& schedule, Complex lambda) {
  const Complex tau = std::sqrt(lambda);
  const auto weights = closed_form_weights(schedule);
  const Complex value = closed_form(weights, tau);
  if (on_branch_cut(lambda)) {
    const Complex other = closed_form(weights, -tau);
    if (std::abs(other - value) > 1e-12 * std::max(1.0, std::abs(value))) {
      throw std::logic_error("scalar response differs between square-root branches");
    }
  }
  return {lambda, tau, value};
}

ResponseSample scalar_response_oracle(const RelaxationSchedule& schedule, Complex lambda) {
  const Complex tau = std::sqrt(lambda);
  if (lambda == Complex{}) {
    // Unscaled basis {v1, v2}: E_s = [[1-a, -a lambda], [-a, 1-a]], E_c = e1 (1, lambda).
    Matrix2 prod{{{1.0, 0.0}, {0.0, 1.0}}};
    for (double a : schedule.alphas) {
      const Matrix2 e{{{1.0 - a, -a * lambda}, {-a, 1.0 - a}}};
      prod = multiply(e, prod);
    }
    const Matrix2 sq = multiply(prod, prod);
    return {lambda, tau, sq[0][0] + lambda * sq[1][0]};
  }

  const double r = 1.0 / std::numbers::sqrt2;
  const Matrix2 q{{{r, r}, {r, -r}}};
  Matrix2 prod{{{1.0, 0.0}, {0.0, 1.0}}};
  std::vector<Matrix2> blocks;
  for (double a : schedule.alphas) {
    const Matrix2 e = scaled_smoother_block(a, tau);
    // Q^T E_s Q = diag((1-a) - a tau, (1-a) + a tau).
    const Matrix2 diag{{{(1.0 - a) - a * tau, 0.0}, {0.0, (1.0 - a) + a * tau}}};
    check_close(multiply(q, multiply(e, q)), diag, 1e-12, "Q does not diagonalize the smoother block");
    for (const auto& b : blocks) {
      check_close(multiply(b, e), multiply(e, b), 1e-12, "smoother blocks do not commute");
    }
    blocks.push_back(e);
    prod = multiply(e, prod);
  }
  const Matrix2 sq = multiply(prod, prod);
  // u = (1, 0)^T, v(lambda)^T = (1, tau).
  const Complex value = sq[0][0] + tau * sq[1][0];
  return {lambda, tau, value};
}

TrigIdentity trig_identity_check(std::size_t m, Complex x, TrigSign sign) {
  if (m == 0) throw Error(ErrorKind::InvalidM, "trig identity needs m >= 1");
  if (std::abs(x) == 0.0) throw Error(ErrorKind::DegenerateX, "x must be nonzero");
  const double pm = sign == TrigSign::plus ? 1.0 : -1.0;
  if (std::abs(x + pm) < 1e-12) {
    throw Error(ErrorKind::DegenerateX, sign == TrigSign::plus ? "x = -1" : "x = 1");
  }
  const Complex t = 0.5 * (x + 1.0 / x);
  const double denom = 2.0 * static_cast<double>(m) + 1.0;
  Complex lhs = 1.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / denom;
    lhs *= std::cos(theta) + pm * t;
  }
  // For the minus sign each factor is -(x^2 - 2x cos + 1)/(2x), hence the (-1)^m.
  const double parity = (sign == TrigSign::minus && m % 2 == 1) ? -1.0 : 1.0;
  const Complex rhs = parity * (ipow(x, 2 * m + 1) + pm) /
                      (std::ldexp(1.0, static_cast<int>(m)) * ipow(x, m) * (x + pm));
  return {lhs, rhs};
}

double cosine_defect_product(std::size_t m) {
  const double denom = 2.0 * static_cast<double>(m) + 1.0;
  double p = 1.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double d = 1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    p *= d * d;
  }
  return p;
}

}  // namespace tlc::relaxation

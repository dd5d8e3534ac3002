#include <cmath>

#include "tlc/problems.hpp"

namespace tlc::problems {

namespace {

void check_delta(DgKind kind, double delta, double element_wise_zero) {
  if (!std::isfinite(delta)) throw Error(ErrorKind::DegenerateDelta, "delta must be finite");
  if (kind == DgKind::element_wise && element_wise_zero == 0.0) {
    throw Error(ErrorKind::DegenerateDelta, "delta = 1/2 makes the element-wise stencil singular");
  }
  if (kind == DgKind::interface_wise && delta == 0.0) {
    throw Error(ErrorKind::DegenerateDelta, "delta = 0 makes the interface-wise stencil singular");
  }
}

bool cholesky_succeeds(const DenseMatrix& h) {
  const std::size_t n = h.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = h(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = h(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

// Adds -(G J^T + J G^T) + p J J^T for one face, J the jump and G the normal
// derivative functional, both as sparse (index, weight) lists.
using Functional = std::vector<std::pair<std::size_t, double>>;

void add_face(DenseMatrix& m, const Functional& jump, const Functional& flux, double penalty) {
  for (const auto& [i, ji] : jump) {
    for (const auto& [j, gj] : flux) {
      m(i, j) -= ji * gj;
      m(j, i) -= ji * gj;
    }
    for (const auto& [j, jj] : jump) m(i, j) += penalty * ji * jj;
  }
}

}  // namespace

DenseMatrix dg_local_prolongation(DgKind kind, double delta) {
  if (kind == DgKind::element_wise) {
    check_delta(kind, delta, 4.0 * delta - 2.0);
    const double a = delta / (4.0 * delta - 2.0);
    const double b = (delta - 1.0) / (4.0 * delta - 2.0);
    return DenseMatrix{{a, b, 0, 0}, {b, a, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0},
                       {a, b, a, b}, {b, a, b, a}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  }
  check_delta(kind, delta, 1.0);
  const double c = (delta - 1.0) / delta;
  const double e = 1.0 / (2.0 * delta);
  return DenseMatrix{{c, e, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {e, c, e, 0},
                     {0, e, c, e}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, e, c}};
}

DenseMatrix dg_local_smoother(DgKind kind, double delta) {
  if (kind == DgKind::element_wise) {
    check_delta(kind, delta, 2.0 * delta - 1.0);
    const double s = 1.0 / (2.0 * delta - 1.0);
    return DenseMatrix{{s * delta, s * (delta - 1.0)}, {s * (delta - 1.0), s * delta}};
  }
  check_delta(kind, delta, 1.0);
  return DenseMatrix{{1.0 / delta, 0}, {0, 1.0 / delta}};
}

DgOperators dg_assemble(const DgSpec& spec) {
  const std::size_t K = spec.num_elements;
  if (K == 0) throw Error(ErrorKind::SizeMismatch, "DG assembly needs at least one coarse element");
  if (spec.kind == DgKind::element_wise && K % 2 != 0) {
    throw Error(ErrorKind::SizeMismatch, "element-wise pairing needs an even number of coarse elements");
  }
  const DenseMatrix local = dg_local_prolongation(spec.kind, spec.delta);
  const DenseMatrix smoother = dg_local_smoother(spec.kind, spec.delta);
  const std::size_t nc = 2 * K;
  DenseMatrix p(4 * K, nc);

  const auto put = [&](std::size_t row, std::ptrdiff_t col, Complex v) {
    if (v != Complex{} && col >= 0 && col < static_cast<std::ptrdiff_t>(nc)) {
      p(row, static_cast<std::size_t>(col)) = v;
    }
  };
  for (std::size_t k = 0; k < K; ++k) {
    const auto base = static_cast<std::ptrdiff_t>(2 * k);
    if (spec.kind == DgKind::element_wise) {
      // Local rows 4..7 are one coarse element's fine rows, the patch
      // starting one coarse element to the left.
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) put(4 * k + r, base - 2 + static_cast<std::ptrdiff_t>(c), local(4 + r, c));
    } else {
      // Trace rows centered on coarse DoFs 2k and 2k+1 (local rows 3 and 4),
      // with the element's own DoFs injected in between.
      for (std::size_t c = 0; c < 3; ++c) {
        put(4 * k, base - 1 + static_cast<std::ptrdiff_t>(c), local(3, c));
        put(4 * k + 3, base + static_cast<std::ptrdiff_t>(c), local(4, c + 1));
      }
      put(4 * k + 1, base, 1.0);
      put(4 * k + 2, base + 1, 1.0);
    }
  }

  const Complex s00 = smoother(0, 0), s01 = smoother(0, 1), s10 = smoother(1, 0), s11 = smoother(1, 1);
  const std::size_t n = 4 * K;
  LinearOperator apply = [=](const Vector& x) {
    if (x.size() != n) throw Error(ErrorKind::SizeMismatch, "DG smoother operand length");
    Vector y(n);
    for (std::size_t i = 0; i < n; i += 2) {
      y[i] = s00 * x[i] + s01 * x[i + 1];
      y[i + 1] = s10 * x[i] + s11 * x[i + 1];
    }
    return y;
  };
  return {std::move(p), std::move(apply)};
}

std::vector<std::size_t> dg_element_red(std::size_t num_fine_elements) {
  std::vector<std::size_t> red;
  for (std::size_t e = 0; e < num_fine_elements; e += 2) {
    red.push_back(2 * e);
    red.push_back(2 * e + 1);
  }
  return red;
}

std::vector<std::size_t> dg_interface_red(std::size_t num_fine_elements) {
  std::vector<std::size_t> red;
  for (std::size_t i = 0; i <= num_fine_elements; i += 2) {
    if (i > 0) red.push_back(2 * i - 1);
    if (i < num_fine_elements) red.push_back(2 * i);
  }
  return red;
}

SipgMatrix sipg_1d_matrix(std::size_t num_elements, double delta) {
  if (num_elements < 2) throw Error(ErrorKind::InvalidArgument, "SIPG needs at least two elements");
  if (!(delta > 0.5)) throw Error(ErrorKind::DegenerateDelta, "SIPG penalty needs delta > 1/2");
  const std::size_t E = num_elements;
  const std::size_t n = 2 * E;
  const double h = 1.0 / static_cast<double>(E);
  const double penalty = delta / h;
  DenseMatrix m(n, n);

  for (std::size_t e = 0; e < E; ++e) {
    const std::size_t l = 2 * e, r = 2 * e + 1;
    m(l, l) += 1.0 / h;
    m(r, r) += 1.0 / h;
    m(l, r) -= 1.0 / h;
    m(r, l) -= 1.0 / h;
  }
  // Interior faces: jump u(x-) - u(x+), average derivative.
  for (std::size_t e = 0; e + 1 < E; ++e) {
    const Functional jump{{2 * e + 1, 1.0}, {2 * e + 2, -1.0}};
    const Functional flux{{2 * e, -0.5 / h}, {2 * e + 1, 0.5 / h}, {2 * e + 2, -0.5 / h}, {2 * e + 3, 0.5 / h}};
    add_face(m, jump, flux, penalty);
  }
  // Boundary faces: trace value and outward normal derivative.
  add_face(m, {{0, 1.0}}, {{0, 1.0 / h}, {1, -1.0 / h}}, penalty);
  add_face(m, {{n - 1, 1.0}}, {{n - 2, -1.0 / h}, {n - 1, 1.0 / h}}, penalty);

  SipgMatrix out;
  out.positive_definite = cholesky_succeeds(m);
  out.matrix = std::move(m);
  return out;
}

}  // namespace tlc::problems

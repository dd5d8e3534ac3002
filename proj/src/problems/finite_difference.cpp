#include "tlc/problems.hpp"

namespace tlc::problems {

DenseMatrix fd1d_matrix(const Fd1dSpec& spec) {
  if (spec.N < 2) throw Error(ErrorKind::InvalidArgument, "FD grids need N >= 2");
  const double h = spec.mesh_width();
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "mesh width must be positive");
  const double inv_h2 = 1.0 / (h * h);
  DenseMatrix a(spec.N, spec.N);
  for (std::size_t i = 0; i < spec.N; ++i) {
    a(i, i) = 2.0 * inv_h2;
    if (i > 0) a(i, i - 1) = -inv_h2;
    if (i + 1 < spec.N) a(i, i + 1) = -inv_h2;
  }
  return a;
}

std::vector<std::size_t> redblack_permutation(std::size_t N) {
  std::vector<std::size_t> perm;
  perm.reserve(N);
  for (std::size_t i = 0; i < N; i += 2) perm.push_back(i);
  for (std::size_t i = 1; i < N; i += 2) perm.push_back(i);
  return perm;
}

std::vector<std::size_t> red_points(std::size_t N) {
  std::vector<std::size_t> red;
  for (std::size_t i = 0; i < N; i += 2) red.push_back(i);
  return red;
}

std::vector<std::size_t> checkerboard_red_points(std::size_t N) {
  std::vector<std::size_t> red;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if ((i + j) % 2 == 0) red.push_back(i * N + j);
  return red;
}

Transfers transfers_1d(const Fd1dSpec& spec) {
  const DenseMatrix a1 = fd1d_matrix(spec);
  const auto red = red_points(spec.N);
  const twolevel::BlockSystem sys = twolevel::split(a1, red);
  const std::size_t n1 = sys.n1();
  const std::size_t nc = sys.n2();
  const DenseMatrix a_inv_b = sys.a_lu().solve(sys.b());

  const auto& perm = sys.permutation();
  DenseMatrix p1(spec.N, nc);
  for (std::size_t k = 0; k < spec.N; ++k) {
    for (std::size_t j = 0; j < nc; ++j) {
      p1(perm[k], j) = k < n1 ? -a_inv_b(k, j) : Complex(k - n1 == j ? 1.0 : 0.0);
    }
  }
  DenseMatrix r1 = p1.transpose();
  return {std::move(p1), std::move(r1)};
}

DenseMatrix fd2d_matrix(const Fd2dSpec& spec) {
  if (spec.N * spec.N > 1024) {
    throw Error(ErrorKind::DimensionTooLarge, "fd2d limited to N^2 <= 1024");
  }
  const DenseMatrix a1 = fd1d_matrix(Fd1dSpec{spec.N, spec.mesh_width()});
  const DenseMatrix id = DenseMatrix::identity(spec.N);
  return kron(a1, id) + kron(id, a1);
}

Transfers tensor_lift(const DenseMatrix& P1, const DenseMatrix& R1) {
  if (R1.rows() != P1.cols() || R1.cols() != P1.rows()) {
    throw Error(ErrorKind::SizeMismatch, "R1 must have the shape of P1^T");
  }
  return {kron(P1, P1), kron(R1, R1)};
}

LinearOperator diag_jacobi_inverse(const DenseMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::InvalidArgument, "Jacobi needs a square matrix");
  Vector inv(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a(i, i) == Complex{}) throw Error(ErrorKind::ZeroDiagonal, "zero diagonal entry at " + std::to_string(i));
    inv[i] = 1.0 / a(i, i);
  }
  return [inv](const Vector& x) {
    if (x.size() != inv.size()) throw Error(ErrorKind::SizeMismatch, "Jacobi operand length");
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * inv[i];
    return y;
  };
}

}  // namespace tlc::problems

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tlc/linalg.hpp"
#include "tlc/twolevel.hpp"

namespace tlc::problems {

/// splitmix64 (Steele, Lea, Flood). Deterministic across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::uint64_t state_;
};

/// Standard normal variates by Box-Muller on a SplitMix64 stream. Each pair
/// of uniforms (u1 in (0, 1], u2 in [0, 1)) yields r cos(2 pi u2), then
/// r sin(2 pi u2).
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : rng_(seed) {}
  double next();

 private:
  SplitMix64 rng_;
  std::optional<double> spare_;
};

/// Row-major fill; each entry takes a real then an imaginary variate.
DenseMatrix random_complex_matrix(std::size_t rows, std::size_t cols, NormalSource& normals);

struct RandomBlockSpec {
  std::size_t n1 = 24;
  std::size_t n2 = 16;
  std::uint64_t seed = 1;
};

/// A, B, C, D with independent complex normal entries scaled by
/// 1/sqrt(n1 + n2); A and D additionally get a unit diagonal shift so the
/// blocks stay well conditioned.
twolevel::BlockSystem random_block_system(const RandomBlockSpec& spec);

struct Fd1dSpec {
  std::size_t N = 15;
  double h = 0.0;  // 0 means 1/(N+1)
  double mesh_width() const { return h > 0.0 ? h : 1.0 / static_cast<double>(N + 1); }
};

struct Fd2dSpec {
  std::size_t N = 16;
  double h = 0.0;  // 0 means 1/(N+1)
  double mesh_width() const { return h > 0.0 ? h : 1.0 / static_cast<double>(N + 1); }
};

struct Transfers {
  DenseMatrix P;
  DenseMatrix R;
};

/// Tridiagonal (1/h^2) [-1 2 -1].
DenseMatrix fd1d_matrix(const Fd1dSpec& spec);

/// 0-based indices of 1-based odd points first, then the even points.
std::vector<std::size_t> redblack_permutation(std::size_t N);

/// Red points of the 1D red/black ordering (the first block).
std::vector<std::size_t> red_points(std::size_t N);

/// Points (i, j) with i + j even, in row-major order, for the N x N grid.
std::vector<std::size_t> checkerboard_red_points(std::size_t N);

/// P1 = [-A^-1 B; I] of the red/black split, rows returned to grid order;
/// R1 = P1^T.
Transfers transfers_1d(const Fd1dSpec& spec);

/// A1 (x) I + I (x) A1, row-major grid ordering. Throws DimensionTooLarge
/// for N^2 > 1024.
DenseMatrix fd2d_matrix(const Fd2dSpec& spec);

/// P = P1 (x) P1 (bilinear interpolation), R = R1 (x) R1 (full weighting).
Transfers tensor_lift(const DenseMatrix& P1, const DenseMatrix& R1);

/// x -> x ./ diag(A). Throws ZeroDiagonal.
LinearOperator diag_jacobi_inverse(const DenseMatrix& a);

enum class DgKind { element_wise, interface_wise };

struct DgSpec {
  std::size_t num_elements = 4;  // coarse elements; the fine space has twice as many
  double delta = 2.0;
  DgKind kind = DgKind::element_wise;
};

/// The 8x4 local prolongation stencil. Throws DegenerateDelta when
/// 4 delta - 2 = 0 (element-wise) or delta = 0 (interface-wise).
DenseMatrix dg_local_prolongation(DgKind kind, double delta);

/// The 2x2 local smoother block. Throws DegenerateDelta when 2 delta - 1 = 0
/// (element-wise) or delta = 0 (interface-wise).
DenseMatrix dg_local_smoother(DgKind kind, double delta);

struct DgOperators {
  DenseMatrix P;  // (4K) x (2K)
  LinearOperator smoother_inverse;
};

/// Slides the local stencil over the coarse elements, four fine rows and two
/// coarse columns per element; columns beyond either end are dropped. The
/// smoother applies the local block to each DoF pair (2i, 2i+1). Element-wise
/// mode pairs coarse elements and throws SizeMismatch for odd or zero counts.
DgOperators dg_assemble(const DgSpec& spec);

/// First block of the element-wise red/black split of 2E fine DoFs: the DoFs
/// of elements 0, 2, 4, ...
std::vector<std::size_t> dg_element_red(std::size_t num_fine_elements);

/// First block of the interface-wise split: the traces at interfaces
/// 0, 2, 4, ... (interface i joins elements i-1 and i; 0 and E are the ends).
std::vector<std::size_t> dg_interface_red(std::size_t num_fine_elements);

struct SipgMatrix {
  DenseMatrix matrix;
  bool positive_definite = false;  // Cholesky succeeded
};

/// Symmetric interior penalty DG for -u'' on [0, 1], linear elements with
/// nodal DoFs (left, right) per element, penalty delta/h on every face,
/// homogeneous Dirichlet data imposed weakly.
SipgMatrix sipg_1d_matrix(std::size_t num_elements, double delta);

struct RandomNonnormalSpec {
  std::size_t n = 64;
  double eta = 1.0;
  double gamma = 0.5;
  std::uint64_t seed = 42;
};

/// B = H/1000 + gamma K with H = W^H W + eta I, K = (X - X^H)/2; W filled
/// before X from one NormalSource.
DenseMatrix random_nonnormal(const RandomNonnormalSpec& spec);

}  // namespace tlc::problems

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tlc/linalg.hpp"
#include "tlc/problems.hpp"

using namespace tlc;
using testing::max_abs_diff;
using testing::random_matrix;
using testing::random_vector;
using testing::same_multiset;

TEST_CASE("lu_solve small cases") {
  const Vector x = lu_solve(DenseMatrix::identity(3), Vector{1.0, 2.0, 3.0});
  CHECK(max_abs_diff(x, Vector{1.0, 2.0, 3.0}) == 0.0);

  const Vector y = lu_solve(DenseMatrix{{2, 1}, {1, 2}}, Vector{3.0, 3.0});
  CHECK(max_abs_diff(y, Vector{1.0, 1.0}) < 1e-15);
}

TEST_CASE("lu_solve round trip on a random 20x20 system") {
  const DenseMatrix a = random_matrix(20, 20, 11);
  const Vector ones(20, Complex{1.0});
  const Vector x = lu_solve(a, a * ones);
  CHECK(max_abs_diff(x, ones) < 1e-10);
}

TEST_CASE("lu_factor rejects singular matrices") {
  const DenseMatrix a{{1, 2}, {2, 4}};
  try {
    (void)lu_factor(a);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMatrix);
  }
}

TEST_CASE("lu determinant and inverse") {
  const DenseMatrix a = random_matrix(6, 6, 3);
  const LuFactors lu = lu_factor(a);
  CHECK(max_abs_diff(a * lu.inverse(), DenseMatrix::identity(6)) < 1e-12);
  const DenseMatrix b{{4, 3}, {6, 3}};
  CHECK(std::abs(lu_factor(b).determinant() - Complex(-6.0)) < 1e-14);
}

TEST_CASE("eigenvalues of small matrices") {
  CHECK(same_multiset(eigenvalues(DenseMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}), {1.0, 2.0, 3.0}, 1e-14));
  CHECK(same_multiset(eigenvalues(DenseMatrix{{0, 1}, {0, 0}}), {0.0, 0.0}, 1e-14));
  CHECK(same_multiset(eigenvalues(DenseMatrix{{2, 1}, {1, 2}}), {1.0, 3.0}, 1e-14));
  // Rotation by 90 degrees: +-i.
  CHECK(same_multiset(eigenvalues(DenseMatrix{{0, -1}, {1, 0}}), {Complex(0, 1), Complex(0, -1)}, 1e-14));
}

TEST_CASE("eigenvalues agree with trace and determinant") {
  const DenseMatrix a = random_matrix(30, 30, 5);
  const auto eigs = eigenvalues(a);
  REQUIRE(eigs.size() == 30);
  Complex sum{}, prod{1.0};
  for (Complex z : eigs) {
    sum += z;
    prod *= z;
  }
  CHECK(std::abs(sum - a.trace()) < 1e-10 * (1.0 + std::abs(a.trace())));
  const Complex det = lu_factor(a).determinant();
  CHECK(std::abs(prod - det) < 1e-9 * std::abs(det));
}

TEST_CASE("eigenvalues of a triangular matrix are its diagonal") {
  DenseMatrix a = random_matrix(12, 12, 8);
  std::vector<Complex> diag;
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < i; ++j) a(i, j) = 0.0;
    diag.push_back(a(i, i));
  }
  CHECK(same_multiset(eigenvalues(a), diag, 1e-12));
}

TEST_CASE("balance is a diagonal similarity") {
  DenseMatrix a = random_matrix(8, 8, 9);
  for (std::size_t j = 0; j < 8; ++j) {
    a(0, j) *= 1e6;
    a(j, 0) *= 1e-6;
  }
  const DenseMatrix b = balance(a);
  CHECK(std::abs(b.trace() - a.trace()) < 1e-12 * (1.0 + std::abs(a.trace())));
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      // Off-diagonal products a_ij a_ji are invariant under diagonal scaling.
      CHECK(std::abs(b(i, j) * b(j, i) - a(i, j) * a(j, i)) <= 1e-12 * (1.0 + std::abs(a(i, j) * a(j, i))));
    }
  }
  CHECK(b.norm_fro() < a.norm_fro());
}

TEST_CASE("hessenberg form") {
  const DenseMatrix a = random_matrix(10, 10, 4);
  const DenseMatrix h = hessenberg(a);
  for (std::size_t i = 2; i < 10; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) CHECK(h(i, j) == Complex{});
  // Unitary similarity keeps the Frobenius norm and the trace.
  CHECK(std::abs(h.norm_fro() - a.norm_fro()) < 1e-12 * a.norm_fro());
  CHECK(std::abs(h.trace() - a.trace()) < 1e-12 * a.norm_fro());
}

TEST_CASE("hermitian_extreme_eig") {
  const auto p = hermitian_extreme_eig(DenseMatrix{{-1, 0}, {0, 5}});
  CHECK(p.value == doctest::Approx(5.0));
  CHECK(std::abs(std::abs(p.vector[1]) - 1.0) < 1e-14);

  const auto q = hermitian_extreme_eig(DenseMatrix{{2, 1}, {1, 2}});
  CHECK(q.value == doctest::Approx(3.0));
  CHECK(std::abs(std::abs(q.vector[0]) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(std::abs(q.vector[1]) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("hermitian_extreme_eig agrees with eigenvalues on a random Hermitian matrix") {
  const DenseMatrix g = random_matrix(30, 30, 17);
  const DenseMatrix h = 0.5 * (g + g.adjoint());
  double top = -1e300;
  for (Complex z : eigenvalues(h)) top = std::max(top, z.real());
  CHECK(std::abs(hermitian_extreme_eig(h).value - top) < 1e-9);
}

TEST_CASE("hermitian_extreme_eig rejects non-Hermitian input") {
  try {
    (void)hermitian_extreme_eig(DenseMatrix{{0, 1}, {0, 0}});
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("gmres on the identity") {
  const Vector b = random_vector(5, 2);
  const auto out = gmres([](const Vector& x) { return x; }, {}, b, 1e-12, 10);
  CHECK(out.converged);
  CHECK(out.iterations == 1);
  CHECK(max_abs_diff(out.solution, b) < 1e-14);
}

TEST_CASE("gmres converges in two steps for two distinct eigenvalues") {
  // A = V diag(2, ..., 2, 5, ..., 5) V^-1 with a random V.
  const DenseMatrix v = random_matrix(12, 12, 21);
  std::vector<Complex> d(12, 2.0);
  for (std::size_t i = 6; i < 12; ++i) d[i] = 5.0;
  const DenseMatrix a = v * (DenseMatrix::diagonal(d) * lu_factor(v).inverse());
  const Vector b = random_vector(12, 22);
  const auto out = gmres([&](const Vector& x) { return a * x; }, {}, b, 1e-10, 12);
  CHECK(out.converged);
  CHECK(out.iterations <= 2);
  CHECK(out.true_residual <= 1e-8 * norm2(b));
}

TEST_CASE("gmres on the 1D Laplacian stays within the dimension bound") {
  const DenseMatrix a = problems::fd1d_matrix({15, 0.0});
  const Vector b(15, Complex{1.0});
  const auto out = gmres([&](const Vector& x) { return a * x; }, {}, b, 1e-10, 15);
  CHECK(out.converged);
  CHECK(out.iterations <= 15);
  CHECK(norm2(sub(a * out.solution, b)) <= 1e-8 * norm2(b));
}

TEST_CASE("kron small cases") {
  CHECK(kron(DenseMatrix::identity(2), DenseMatrix::identity(3)) == DenseMatrix::identity(6));
  const DenseMatrix k = kron(DenseMatrix{{0, 1}, {0, 0}}, DenseMatrix::identity(2));
  DenseMatrix want(4, 4);
  want(0, 2) = 1.0;
  want(1, 3) = 1.0;
  CHECK(k == want);
}

TEST_CASE("kron mixed-product identity") {
  const DenseMatrix a = random_matrix(3, 3, 31);
  const DenseMatrix b = random_matrix(3, 3, 32);
  const Vector x = random_vector(3, 33);
  const Vector y = random_vector(3, 34);
  const Vector lhs = kron(a, b) * kron(x, y);
  const Vector rhs = kron(a * x, b * y);
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("materialize") {
  CHECK(materialize([](const Vector& x) { return x; }, 4) == DenseMatrix::identity(4));
  CHECK(materialize([](const Vector& x) { return scaled(2.0, x); }, 2) == 2.0 * DenseMatrix::identity(2));
}

TEST_CASE("fov of a Hermitian diagonal lies on its spectral interval") {
  const auto fov = fov_boundary(DenseMatrix{{0, 0}, {0, 1}}, 64);
  for (Complex p : fov.points()) {
    CHECK(std::abs(p.imag()) < 1e-9);
    CHECK(p.real() > -1e-9);
    CHECK(p.real() < 1.0 + 1e-9);
  }
}

TEST_CASE("fov of the 2x2 nilpotent is the disc of radius one half") {
  const auto fov = fov_boundary(DenseMatrix{{0, 1}, {0, 0}}, 128);
  for (Complex p : fov.points()) CHECK(std::abs(std::abs(p) - 0.5) < 1e-6);
  CHECK(std::abs(fov.numerical_radius() - 0.5) < 1e-6);
}

TEST_CASE("fov of a normal matrix is the hull of its spectrum") {
  const DenseMatrix a = DenseMatrix::diagonal(std::vector<Complex>{1.0, Complex(0, 1), -1.0});
  const auto fov = fov_boundary(a, 256);
  const std::vector<Complex> corners{1.0, Complex(0, 1), -1.0};
  const auto hull = convex_hull(corners);
  for (Complex p : fov.points()) CHECK(hull_contains(hull, p, 1e-6));
  // The three vertices are boundary points.
  for (Complex c : corners) {
    double best = 1e300;
    for (Complex p : fov.points()) best = std::min(best, std::abs(p - c));
    CHECK(best < 1e-6);
  }
}

TEST_CASE("fov of a random matrix encloses its spectrum") {
  const DenseMatrix a = random_matrix(16, 16, 41);
  const auto hull = convex_hull(fov_boundary(a, 256).points());
  for (Complex z : eigenvalues(a)) CHECK(hull_contains(hull, z, 1e-6));
}

TEST_CASE("convex hull drops interior and collinear points") {
  const auto hull = convex_hull({0.0, 1.0, Complex(1, 1), Complex(0, 1), Complex(0.5, 0.5), 0.5});
  CHECK(hull.size() == 4);
  CHECK(hull_contains(hull, Complex(0.25, 0.75), 0.0));
  CHECK_FALSE(hull_contains(hull, Complex(1.5, 0.5), 1e-6));
}

TEST_CASE("extended matrix arithmetic") {
  const DenseMatrix a = random_matrix(5, 4, 51);
  const DenseMatrix b = random_matrix(4, 3, 52);
  const ExtMatrix p = ExtMatrix(a) * ExtMatrix(b);
  CHECK(max_abs_diff(p.rounded(), a * b) < 1e-14);
  CHECK(ExtMatrix(a).transpose().rounded() == a.transpose());
  CHECK((ExtMatrix(a) - ExtMatrix(a)).norm_fro() == 0.0L);
}

TEST_CASE("refined solve beats the plain double solve") {
  // Hilbert matrix scaled to integers (condition ~1e7), so A * ones is exact.
  const std::size_t n = 6;
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 27720.0 / static_cast<double>(i + j + 1);
  const DenseMatrix ones(n, 1, std::vector<Complex>(n, 1.0));
  const DenseMatrix b = a * ones;
  const LuFactors lu = lu_factor(a);
  const ExtMatrix x = refined_solve(ExtMatrix(a), lu, ExtMatrix(b));
  const long double err = (x - ExtMatrix(ones)).norm_fro();
  const double err0 = max_abs_diff(lu.solve(b), ones);
  CHECK(err0 > 1e-12);
  CHECK(err < 1e-13L);
}

TEST_CASE("extended eigenvalues agree with the double solver") {
  const DenseMatrix a = random_matrix(20, 20, 61);
  CHECK(same_multiset(eigenvalues_extended(ExtMatrix(a)), eigenvalues(a), 1e-10));
}

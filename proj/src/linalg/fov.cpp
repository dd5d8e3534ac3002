#include "tlc/linalg/fov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tlc/errors.hpp"
#include "tlc/linalg/eigen.hpp"

namespace tlc {

std::vector<Complex> FovBoundary::points() const {
  std::vector<Complex> p;
  p.reserve(samples.size());
  for (const auto& s : samples) p.push_back(s.boundary_point);
  return p;
}

double FovBoundary::numerical_radius() const {
  double r = 0.0;
  for (const auto& s : samples) r = std::max(r, std::abs(s.boundary_point));
  return r;
}

FovBoundary fov_boundary(const DenseMatrix& m, std::size_t num_angles, const Tolerances& tol) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "fov_boundary needs a square matrix");
  if (num_angles < 8) throw Error(ErrorKind::InvalidArgument, "fov_boundary needs at least 8 angles");
  const std::size_t n = m.rows();
  FovBoundary out;
  out.samples.reserve(num_angles);
  DenseMatrix basis;
  for (std::size_t k = 0; k < num_angles; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(num_angles);
    const Complex rot = std::polar(1.0, theta);
    DenseMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        h(i, j) = 0.5 * (rot * m(i, j) + std::conj(rot * m(j, i)));

    // Consecutive angles give nearby matrices; reuse the previous eigenbasis.
    const auto dec = hermitian_eigen(h, basis.empty() ? nullptr : &basis, tol);
    const auto top = static_cast<std::size_t>(
        std::max_element(dec.values.begin(), dec.values.end()) - dec.values.begin());
    Vector v = dec.vectors.column(top);
    const double nv = norm2(v);
    for (auto& z : v) z /= nv;
    const Vector mv = m * v;
    out.samples.push_back({theta, dot(v, mv), dec.values[top]});
    basis = dec.vectors;
  }
  return out;
}

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(Complex a, Complex b, Complex z) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

}  // namespace

std::vector<Complex> convex_hull(std::vector<Complex> points) {
  std::sort(points.begin(), points.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Complex> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool hull_contains(const std::vector<Complex>& hull, Complex z, double inflation) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return std::abs(z - hull[0]) <= inflation;
  if (hull.size() == 2) return segment_distance(hull[0], hull[1], z) <= inflation;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex a = hull[i];
    const Complex b = hull[(i + 1) % hull.size()];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    if (cross(a, b, z) / len < -inflation) return false;
  }
  return true;
}

}  // namespace tlc

#pragma once

#include <cstddef>
#include <vector>

#include "tlc/linalg/dense_matrix.hpp"
#include "tlc/tolerances.hpp"

namespace tlc {

struct FovSample {
  double angle = 0.0;     // radians
  Complex boundary_point; // v^H M v
  double support_value = 0.0;  // largest eigenvalue of Re(e^{i angle} M)
};

struct FovBoundary {
  std::vector<FovSample> samples;

  std::vector<Complex> points() const;
  /// max |p| over the boundary points.
  double numerical_radius() const;
};

/// Boundary of the numerical range {v^H M v : |v| = 1} by the rotation /
/// support-function method at angles 2 pi k / num_angles.
FovBoundary fov_boundary(const DenseMatrix& m, std::size_t num_angles,
                         const Tolerances& tol = kTolerances);

/// Convex hull (counter-clockwise, no collinear points) of planar points.
std::vector<Complex> convex_hull(std::vector<Complex> points);

/// True when z lies inside the convex polygon `hull` (counter-clockwise)
/// inflated by `inflation`. Degenerate hulls (point, segment) are handled as
/// distance checks.
bool hull_contains(const std::vector<Complex>& hull, Complex z, double inflation);

}  // namespace tlc

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace anisoac {

using Point = Eigen::Vector2d;

/// Oriented closed polyline on the unit torus. Vertices are unwrapped (a
/// circle near x = 1 keeps x > 1 rather than jumping back to 0). The u < alpha
/// side is on the left of the direction of travel, so a small circle with the
/// low phase inside runs counter-clockwise and its outward normal is the right
/// normal (t_y, -t_x).
struct FrontCurve {
  std::vector<Point> vertices;
  std::vector<Point> normals;      // outward unit normal, filled by geometry()
  std::vector<double> curvature;   // 1/length, positive on a counter-clockwise circle
  bool closed = true;
  /// The contour closes only up to a nonzero lattice translation
  /// (e.g. a straight line x = const on the torus).
  bool wraps = false;

  std::size_t size() const { return vertices.size(); }
};

/// Shoelace area (positive for counter-clockwise).
double signed_area(const FrontCurve& curve);

/// Total length including the closing segment.
double perimeter(const FrontCurve& curve);

}  // namespace anisoac

#include "anisoac/curve.hpp"

namespace anisoac {

double signed_area(const FrontCurve& curve) {
  const auto& v = curve.vertices;
  double twice = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point& p = v[k];
    const Point& q = v[(k + 1) % v.size()];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

double perimeter(const FrontCurve& curve) {
  const auto& v = curve.vertices;
  double len = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) len += (v[(k + 1) % v.size()] - v[k]).norm();
  return len;
}

}  // namespace anisoac

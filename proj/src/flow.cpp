#include "anisoac/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "anisoac/periodic_spline.hpp"

namespace anisoac {

namespace {

struct CurveSplines {
  PeriodicSpline x, y;
  double length = 0.0;
  std::vector<double> knots;
};

CurveSplines fit(const FrontCurve& curve) {
  const auto& v = curve.vertices;
  const std::size_t n = v.size();
  if (n < 8) throw Error(ErrorCode::DegenerateCurve, "curve has fewer than 8 vertices");
  if (!curve.closed || curve.wraps) throw Error(ErrorCode::DegenerateCurve, "curve is not closed on the torus");
  CurveSplines s;
  s.knots.resize(n);
  std::vector<double> xs(n), ys(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s.knots[k] = acc;
    xs[k] = v[k].x();
    ys[k] = v[k].y();
    const double seg = (v[(k + 1) % n] - v[k]).norm();
    if (!(seg > 0.0)) throw Error(ErrorCode::DegenerateCurve, "repeated vertex");
    acc += seg;
  }
  s.length = acc;
  s.x = PeriodicSpline(s.knots, xs, acc);
  s.y = PeriodicSpline(s.knots, ys, acc);
  return s;
}

double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const double d1 = cross2(q2 - q1, p1 - q1);
  const double d2 = cross2(q2 - q1, p2 - q1);
  const double d3 = cross2(p2 - p1, q1 - p1);
  const double d4 = cross2(p2 - p1, q2 - p1);
  const auto opposite = [](double a, double b) { return (a > 0 && b < 0) || (a < 0 && b > 0); };
  if (opposite(d1, d2) && opposite(d3, d4)) return true;
  // touching: an endpoint on the other segment
  const auto within = [](const Point& a, const Point& b, const Point& p) {
    return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) && p.y() >= std::min(a.y(), b.y()) &&
           p.y() <= std::max(a.y(), b.y());
  };
  return (d1 == 0 && within(q1, q2, p1)) || (d2 == 0 && within(q1, q2, p2)) || (d3 == 0 && within(p1, p2, q1)) ||
         (d4 == 0 && within(p1, p2, q2));
}

double point_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

Point min_image(Point d) {
  d.x() -= std::round(d.x());
  d.y() -= std::round(d.y());
  return d;
}

}  // namespace

FrontCurve geometry(FrontCurve curve) {
  const CurveSplines s = fit(curve);
  const std::size_t n = curve.size();
  curve.normals.resize(n);
  curve.curvature.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = s.knots[k];
    const double xp = s.x.first_derivative(t), yp = s.y.first_derivative(t);
    const double xpp = s.x.second_derivative(t), ypp = s.y.second_derivative(t);
    const double speed = std::hypot(xp, yp);
    if (!(speed > 0.0)) throw Error(ErrorCode::DegenerateCurve, "vanishing tangent");
    curve.normals[k] = Point(yp / speed, -xp / speed);
    curve.curvature[k] = (xp * ypp - yp * xpp) / (speed * speed * speed);
  }
  return curve;
}

FrontCurve circle_curve(const Point& centre, double radius, int n) {
  FrontCurve c;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    c.vertices.push_back(centre + radius * Point(std::cos(th), std::sin(th)));
  }
  return c;
}

FrontCurve redistribute(const FrontCurve& curve, int n) {
  const CurveSplines s = fit(curve);
  FrontCurve out;
  out.vertices.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = s.length * k / n;
    out.vertices.emplace_back(s.x.value(t), s.y.value(t));
  }
  return out;
}

bool self_intersects(const FrontCurve& curve) {
  const auto& v = curve.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a1 = v[i];
    const Point& a2 = v[(i + 1) % n];
    const double xmin = std::min(a1.x(), a2.x()), xmax = std::max(a1.x(), a2.x());
    const double ymin = std::min(a1.y(), a2.y()), ymax = std::max(a1.y(), a2.y());
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Point& b1 = v[j];
      const Point& b2 = v[(j + 1) % n];
      if (std::max(b1.x(), b2.x()) < xmin || std::min(b1.x(), b2.x()) > xmax) continue;
      if (std::max(b1.y(), b2.y()) < ymin || std::min(b1.y(), b2.y()) > ymax) continue;
      if (segments_cross(a1, a2, b1, b2)) return true;
    }
  }
  return false;
}

FrontCurve step_front(const FrontCurve& curve, const MobilityTable& mobility, double dt, FrontOptions options) {
  const int n = static_cast<int>(curve.size());
  FrontCurve c = curve;
  double elapsed = 0.0;
  while (elapsed < dt) {
    c = geometry(std::move(c));
    double m_max = 0.0;
    std::vector<double> speed(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double theta = std::atan2(c.normals[k].y(), c.normals[k].x());
      const double m = mobility.tangential(theta);
      if (!(m > 0.0)) {
        std::ostringstream msg;
        msg << "tau^T mu tau = " << m << " at normal angle " << theta;
        throw Error(ErrorCode::NotElliptic, msg.str());
      }
      m_max = std::max(m_max, m);
      speed[k] = -c.curvature[k] * m;
    }
    double min_spacing = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < c.size(); ++k)
      min_spacing = std::min(min_spacing, (c.vertices[(k + 1) % c.size()] - c.vertices[k]).norm());
    const double limit = options.safety * min_spacing * min_spacing / m_max;
    const double remaining = dt - elapsed;
    const int pieces = static_cast<int>(std::ceil(remaining / limit - 1e-9));
    const double h = pieces <= 1 ? remaining : remaining / pieces;
    for (std::size_t k = 0; k < c.size(); ++k) c.vertices[k] += h * speed[k] * c.normals[k];
    elapsed = pieces <= 1 ? dt : elapsed + h;
    c = redistribute(c, n);
    const double area = std::abs(signed_area(c));
    if (area < options.extinction_area) {
      std::ostringstream msg;
      msg << "enclosed area " << area << " below " << options.extinction_area;
      throw Error(ErrorCode::Extinction, msg.str());
    }
  }
  if (self_intersects(c)) throw Error(ErrorCode::SelfIntersection, "front crossed itself");
  return geometry(std::move(c));
}

FrontCurve evolve_front(FrontCurve curve, const MobilityTable& mobility, double t_end, double dt,
                        FrontOptions options) {
  double t = 0.0;
  while (t < t_end * (1.0 - 1e-12)) {
    const double h = std::min(dt, t_end - t);
    curve = step_front(curve, mobility, h, options);
    t += h;
  }
  return curve;
}

ScalarField signed_distance(const FrontCurve& curve, const Grid& grid, double band) {
  const auto& v = curve.vertices;
  const std::size_t m = v.size();
  if (m < 3 || !curve.closed || curve.wraps) throw Error(ErrorCode::DegenerateCurve, "need a closed curve");
  const int n = grid.n;
  const double h = grid.h;
  if (band <= 0.0) band = 8.0 * h;
  const double inf = std::numeric_limits<double>::infinity();

  // Unsigned distance: exact near each segment, stamped over its bounding box plus the band.
  std::vector<double> dist(grid.cells(), inf);
  const int reach = static_cast<int>(std::ceil(band / h)) + 1;
  for (std::size_t k = 0; k < m; ++k) {
    const Point& a = v[k];
    const Point& b = v[(k + 1) % m];
    const int i0 = static_cast<int>(std::floor(std::min(a.x(), b.x()) / h)) - reach;
    const int i1 = static_cast<int>(std::ceil(std::max(a.x(), b.x()) / h)) + reach;
    const int j0 = static_cast<int>(std::floor(std::min(a.y(), b.y()) / h)) - reach;
    const int j1 = static_cast<int>(std::ceil(std::max(a.y(), b.y()) / h)) + reach;
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        const double d = point_segment(Point(i * h, j * h), a, b);
        double& slot = dist[grid.index(i, j)];
        slot = std::min(slot, d);
      }
  }
  std::vector<char> fixed(grid.cells());
  for (std::size_t k = 0; k < dist.size(); ++k) {
    fixed[k] = dist[k] <= band;
    if (!fixed[k]) dist[k] = inf;
  }

  // Fast sweeping (Godunov upwind Eikonal) for the cells outside the band.
  for (int round = 0; round < 3; ++round) {
    for (int dir = 0; dir < 4; ++dir) {
      const int si = dir & 1 ? -1 : 1;
      const int sj = dir & 2 ? -1 : 1;
      for (int jj = 0; jj < n; ++jj) {
        const int j = sj > 0 ? jj : n - 1 - jj;
        for (int ii = 0; ii < n; ++ii) {
          const int i = si > 0 ? ii : n - 1 - ii;
          const std::size_t k = grid.index(i, j);
          if (fixed[k]) continue;
          const double a = std::min(dist[grid.index(i - 1, j)], dist[grid.index(i + 1, j)]);
          const double b = std::min(dist[grid.index(i, j - 1)], dist[grid.index(i, j + 1)]);
          double cand;
          if (std::isinf(a) && std::isinf(b)) continue;
          if (std::abs(a - b) >= h)
            cand = std::min(a, b) + h;
          else
            cand = 0.5 * (a + b + std::sqrt(2.0 * h * h - (a - b) * (a - b)));
          dist[k] = std::min(dist[k], cand);
        }
      }
    }
  }

  // Inside test: ray parity against the curve and its lattice translates.
  const bool ccw = signed_area(curve) > 0.0;
  ScalarField d(grid);
  for (int j = 0; j < n; ++j) {
    std::vector<double> crossings;
    for (int ly = -1; ly <= 1; ++ly) {
      const double y = j * h + ly;
      for (std::size_t k = 0; k < m; ++k) {
        const Point& a = v[k];
        const Point& b = v[(k + 1) % m];
        if ((a.y() > y) != (b.y() > y)) crossings.push_back(a.x() + (y - a.y()) / (b.y() - a.y()) * (b.x() - a.x()));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    for (int i = 0; i < n; ++i) {
      bool inside = false;
      for (int lx = -1; lx <= 1 && !inside; ++lx) {
        const double x = i * h + lx;
        const auto right = crossings.end() - std::upper_bound(crossings.begin(), crossings.end(), x);
        inside = right % 2 == 1;
      }
      const double mag = dist[grid.index(i, j)];
      // Left of a counter-clockwise curve is its interior; of a clockwise one, the exterior.
      d(i, j) = inside == ccw ? -mag : mag;
    }
  }
  return d;
}

double level_set_dt(const MobilityTable& mobility, const Grid& grid) {
  return grid.h * grid.h / (4.0 * mobility.max_eigenvalue());
}

namespace {

// Periodic neighbour indices along one axis.
struct Wrap {
  std::vector<int> up, down;
  explicit Wrap(int n) : up(static_cast<std::size_t>(n)), down(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) {
      up[static_cast<std::size_t>(i)] = i + 1 == n ? 0 : i + 1;
      down[static_cast<std::size_t>(i)] = i == 0 ? n - 1 : i - 1;
    }
  }
};

}  // namespace

ScalarField step_level_set(const ScalarField& d, const MobilityTable& mobility, double dt,
                           const LevelSetOptions& options) {
  const Grid& g = d.grid;
  const int n = g.n;
  const double h = g.h;
  const double limit = level_set_dt(mobility, g);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the explicit limit " << limit;
    throw Error(ErrorCode::CFLViolated, msg.str());
  }
  ScalarField out = d;
  out.t = d.t + dt;
  const double band = options.band * h;
  const double inv_h2 = 1.0 / (h * h);
  const Wrap w(n);
  const auto& v = d.values;
  const auto at = [n](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + i; };
  for (int j = 0; j < n; ++j) {
    const int jp = w.up[static_cast<std::size_t>(j)], jm = w.down[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
      const int ip = w.up[static_cast<std::size_t>(i)], im = w.down[static_cast<std::size_t>(i)];
      const double c = v[at(i, j)];
      const double e = v[at(ip, j)], west = v[at(im, j)], no = v[at(i, jp)], so = v[at(i, jm)];
      const double dx = (e - west) / (2.0 * h);
      const double dy = (no - so) / (2.0 * h);
      const double grad = std::hypot(dx, dy);
      if (grad < 0.5) {
        if (std::abs(c) < band) {
          std::ostringstream msg;
          msg << "|grad d| = " << grad << " at (" << i << ", " << j << ") with d = " << c;
          throw Error(ErrorCode::GradientDegeneracy, msg.str());
        }
        continue;
      }
      const double dxx = (e - 2.0 * c + west) * inv_h2;
      const double dyy = (no - 2.0 * c + so) * inv_h2;
      const double dxy = (v[at(ip, jp)] - v[at(ip, jm)] - v[at(im, jp)] + v[at(im, jm)]) * 0.25 * inv_h2;
      double rhs;
      if (options.full_contraction) {
        const Eigen::Matrix2d mu = mobility.at(Eigen::Vector2d(dx / grad, dy / grad)).mu;
        rhs = mu(0, 0) * dxx + (mu(0, 1) + mu(1, 0)) * dxy + mu(1, 1) * dyy;
      } else {
        // (tau^T mu tau)(tau^T D^2 d tau) with tau the unit tangent; equals the
        // full contraction when d is a distance function.
        const double tx = -dy / grad, ty = dx / grad;
        const double m = mobility.tangential(std::atan2(dy, dx));
        rhs = m * (tx * tx * dxx + 2.0 * tx * ty * dxy + ty * ty * dyy);
      }
      const double next = c + dt * rhs;
      if (!std::isfinite(next)) throw Error(ErrorCode::Blowup, "level-set value is not finite");
      out.values[at(i, j)] = next;
    }
  }
  return out;
}

ScalarField reinitialize(const ScalarField& d0, int iterations) {
  const Grid& g = d0.grid;
  const int n = g.n;
  const double h = g.h;
  const double dtau = 0.5 * h;
  const Wrap w(n);
  const auto at = [n](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + i; };
  const auto& v0 = d0.values;

  // Subcell fix: cells with a sign change to a neighbour keep the interface
  // position of d0 through D = h d0 / max of the local difference magnitudes.
  std::vector<double> anchor(g.cells(), std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double c = v0[at(i, j)];
      const double e = v0[at(w.up[i], j)], west = v0[at(w.down[i], j)];
      const double no = v0[at(i, w.up[j])], s = v0[at(i, w.down[j])];
      if (c * e < 0 || c * west < 0 || c * no < 0 || c * s < 0 || c == 0.0) {
        const double grad = std::max({std::hypot(0.5 * (e - west), 0.5 * (no - s)), std::abs(e - c),
                                      std::abs(c - west), std::abs(no - c), std::abs(c - s), 1e-12 * h});
        anchor[at(i, j)] = h * c / grad;
      }
    }

  std::vector<double> cur = v0;
  std::vector<double> next(cur.size());
  const auto sq = [](double x) { return x * x; };
  for (int it = 0; it < iterations; ++it) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t k = at(i, j);
        const double c = cur[k];
        const double s0 = v0[k];
        const double sgn = s0 > 0 ? 1.0 : (s0 < 0 ? -1.0 : 0.0);
        if (!std::isnan(anchor[k])) {
          next[k] = c - dtau / h * (sgn * std::abs(c) - anchor[k]);
          continue;
        }
        const double a = (c - cur[at(w.down[i], j)]) / h;  // backward x
        const double b = (cur[at(w.up[i], j)] - c) / h;    // forward x
        const double cc = (c - cur[at(i, w.down[j])]) / h;
        const double dd = (cur[at(i, w.up[j])] - c) / h;
        double gx2, gy2;
        if (sgn > 0) {
          gx2 = std::max(sq(std::max(a, 0.0)), sq(std::min(b, 0.0)));
          gy2 = std::max(sq(std::max(cc, 0.0)), sq(std::min(dd, 0.0)));
        } else {
          gx2 = std::max(sq(std::min(a, 0.0)), sq(std::max(b, 0.0)));
          gy2 = std::max(sq(std::min(cc, 0.0)), sq(std::max(dd, 0.0)));
        }
        next[k] = c - dtau * sgn * (std::sqrt(gx2 + gy2) - 1.0);
      }
    std::swap(cur, next);
  }
  ScalarField out = d0;
  out.values = std::move(cur);
  return out;
}

ScalarField evolve_level_set(ScalarField d, const MobilityTable& mobility, double t_end,
                             const LevelSetOptions& options) {
  const double dt = level_set_dt(mobility, d.grid);
  const double t0 = d.t;
  int count = 0;
  while (d.t < t0 + t_end * (1.0 - 1e-12)) {
    const double h = std::min(dt, t0 + t_end - d.t);
    d = step_level_set(d, mobility, h, options);
    if (options.reinit_every > 0 && ++count % options.reinit_every == 0) {
      const double t = d.t;
      d = reinitialize(d, options.reinit_iterations);
      d.t = t;
    }
  }
  return d;
}

double distance_to_curve(const Point& p, const FrontCurve& curve) {
  const auto& v = curve.vertices;
  const std::size_t m = v.size();
  const std::size_t segs = curve.closed ? m : m - 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < segs; ++k) {
    const Point& a = v[k];
    const Point& b = v[(k + 1) % m];
    const Point q = a + min_image(p - a);
    best = std::min(best, point_segment(q, a, b));
  }
  return best;
}

double hausdorff(const FrontCurve& a, const FrontCurve& b) {
  double worst = 0.0;
  for (const Point& p : a.vertices) worst = std::max(worst, distance_to_curve(p, b));
  for (const Point& p : b.vertices) worst = std::max(worst, distance_to_curve(p, a));
  return worst;
}

}  // namespace anisoac

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anisoac/flow.hpp"
#include "anisoac/harness.hpp"

using namespace anisoac;

namespace {

const MobilityTable& identity_table() {
  static const MobilityTable t = MobilityTable::constant(Eigen::Matrix2d::Identity());
  return t;
}

FrontCurve translated(FrontCurve c, const Point& shift) {
  for (Point& p : c.vertices) p += shift;
  return c;
}

}  // namespace

TEST_CASE("circle geometry") {
  const FrontCurve c = geometry(circle_curve({0.5, 0.5}, 0.2, 128));
  CHECK(signed_area(c) > 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    CHECK(c.curvature[k] == doctest::Approx(5.0).epsilon(1e-3));
    const Point radial = (c.vertices[k] - Point(0.5, 0.5)).normalized();
    CHECK(c.normals[k].dot(radial) == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(perimeter(c) == doctest::Approx(2.0 * std::numbers::pi * 0.2).epsilon(1e-3));
  FrontCurve tiny;
  tiny.vertices = {{0, 0}, {1, 0}, {1, 1}};
  CHECK_THROWS_AS(geometry(tiny), Error);
}

TEST_CASE("isotropic area law") {
  const double lam = 0.5;
  const MobilityTable tab = MobilityTable::constant(Eigen::Matrix2d::Identity() * lam);
  FrontCurve c = shape_curve({.kind = "ellipse", .centre = {0.5, 0.5}, .a = 0.25, .b = 0.15, .markers = 256});
  const double a0 = signed_area(c);
  double worst = 0.0;
  double t = 0.0;
  while (signed_area(c) > 0.5 * a0) {
    c = step_front(c, tab, 1e-5);
    t += 1e-5;
    worst = std::max(worst, std::abs(signed_area(c) - a0 + 2.0 * std::numbers::pi * lam * t));
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("front tracking follows the shrinking circle") {
  FrontCurve c = circle_curve({0.5, 0.5}, 0.25, 256);
  c = evolve_front(c, identity_table(), 0.01, 1e-5);
  double worst = 0.0;
  for (const Point& p : c.vertices) worst = std::max(worst, std::abs((p - Point(0.5, 0.5)).norm() - std::sqrt(0.0425)));
  CHECK(worst < 1e-4);
}

TEST_CASE("equivariance") {
  const FrontCurve e0 = shape_curve({.kind = "ellipse", .centre = {0.5, 0.5}, .a = 0.25, .b = 0.15, .markers = 128});
  const FrontCurve base = evolve_front(e0, identity_table(), 2e-3, 1e-4);

  const Point shift(0.375, -0.25);
  const FrontCurve moved = evolve_front(translated(e0, shift), identity_table(), 2e-3, 1e-4);
  double dt = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) dt = std::max(dt, (moved.vertices[k] - shift - base.vertices[k]).norm());
  CHECK(dt <= 1e-8);

  FrontCurve rot = e0;
  const Point c(0.5, 0.5);
  for (Point& p : rot.vertices) p = c + Point(-(p - c).y(), (p - c).x());
  rot = evolve_front(rot, identity_table(), 2e-3, 1e-4);
  double dr = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    const Point q = rot.vertices[k] - c;
    dr = std::max(dr, (c + Point(q.y(), -q.x()) - base.vertices[k]).norm());
  }
  CHECK(dr <= 1e-8);
}

TEST_CASE("front tracking errors") {
  const FrontCurve c = circle_curve({0.5, 0.5}, 0.1, 64);
  try {
    step_front(c, MobilityTable::constant(-Eigen::Matrix2d::Identity()), 1e-5);
    FAIL("expected NotElliptic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotElliptic);
  }
  try {
    evolve_front(c, identity_table(), 0.01, 1e-4, {.extinction_area = 1e-4});
    FAIL("expected Extinction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Extinction);
  }
  // figure eight: proper crossing (odd count) and crossing through a vertex (even count)
  for (int n : {63, 64}) {
    FrontCurve eight;
    for (int k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * k / n;
      eight.vertices.push_back({0.5 + 0.3 * std::sin(t), 0.5 + 0.2 * std::sin(t) * std::cos(t)});
    }
    CHECK(self_intersects(eight));
  }
  CHECK_FALSE(self_intersects(c));
}

TEST_CASE("signed distance") {
  const Grid grid(64);
  const ScalarField d = signed_distance(circle_curve({0.5, 0.5}, 0.25, 1024), grid);
  // exact in the band, first-order sweeping beyond it
  double near = 0.0, far = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const double exact = std::hypot(i * grid.h - 0.5, j * grid.h - 0.5) - 0.25;
      const double e = std::abs(d(i, j) - exact);
      if (std::abs(exact) < 7.0 * grid.h) near = std::max(near, e);
      else if (std::abs(exact) < 0.2) far = std::max(far, e);
    }
  }
  CHECK(near < 1e-5);
  CHECK(far < 0.5 * grid.h);
  CHECK(d(32, 32) < 0.0);
  CHECK(d(0, 0) > 0.0);
}

TEST_CASE("curvature from the distance Hessian: full contraction vs tangential form") {
  const ModelSpec spec(ReactionSpec::cubic(), DiffusivitySpec::diag({1.0, 2.0}), 0.02);
  const MobilityTable tab = tabulate_mobility(spec, 128);
  const Grid grid(256);
  const double r0 = 0.25;
  const ScalarField d = sample_field(grid, [&](double x, double y) { return std::hypot(x - 0.5, y - 0.5) - r0; });
  const double h = grid.h;
  double worst = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      if (std::abs(d(i, j)) > 3.0 * h) continue;
      const double dx = (d(i + 1, j) - d(i - 1, j)) / (2 * h), dy = (d(i, j + 1) - d(i, j - 1)) / (2 * h);
      Eigen::Matrix2d hess;
      hess(0, 0) = (d(i + 1, j) - 2 * d(i, j) + d(i - 1, j)) / (h * h);
      hess(1, 1) = (d(i, j + 1) - 2 * d(i, j) + d(i, j - 1)) / (h * h);
      hess(0, 1) = hess(1, 0) =
          (d(i + 1, j + 1) - d(i + 1, j - 1) - d(i - 1, j + 1) + d(i - 1, j - 1)) / (4 * h * h);
      const Eigen::Vector2d n = Eigen::Vector2d(dx, dy).normalized();
      const Eigen::Matrix2d mu = tab.at(n).mu;
      const double raw = (mu.cwiseProduct(hess)).sum();
      const double theta = std::atan2(n.y(), n.x());
      const double r = d(i, j) + r0;
      worst = std::max(worst, std::abs(raw - tab.tangential(theta) / r));
    }
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("level set: isotropic circle") {
  const Grid grid(128);
  const ScalarField d = signed_distance(circle_curve({0.5, 0.5}, 0.25, 1024), grid);
  const ScalarField out = evolve_level_set(d, identity_table(), 0.02);
  CHECK(out.t == doctest::Approx(0.02));
  const FrontCurve c = extract_level_set(out, 0.0);
  double worst = 0.0;
  for (const Point& p : c.vertices) worst = std::max(worst, std::abs((p - Point(0.5, 0.5)).norm() - 0.15));
  CHECK(worst <= 2.0 * grid.h);
  CHECK(level_set_dt(identity_table(), grid) == doctest::Approx(grid.h * grid.h / 4.0));
}

TEST_CASE("level set: straight lines are stationary") {
  const Grid grid(64);
  ScalarField d = sample_field(grid, [](double x, double) { return std::abs(x - 0.5) - 0.25; });
  d = reinitialize(d, 20);
  const double dt = level_set_dt(identity_table(), grid);
  for (int s = 1; s <= 10000; ++s) {
    d = step_level_set(d, identity_table(), dt);
    if (s % 25 == 0) d = reinitialize(d, 20);
  }
  double drift = 0.0;
  for (const FrontCurve& c : extract_level_sets(d, 0.0)) {
    for (const Point& p : c.vertices) {
      const double x = p.x() - std::floor(p.x());
      drift = std::max(drift, std::min(std::abs(x - 0.25), std::abs(x - 0.75)));
    }
  }
  CHECK(drift <= grid.h);
}

TEST_CASE("reinitialization restores unit slope near the zero set") {
  const Grid grid(128);
  // 3 (r - R) has the right zero set and the wrong slope
  const ScalarField d = sample_field(grid, [](double x, double y) { return 3.0 * (std::hypot(x - 0.5, y - 0.5) - 0.25); });
  const ScalarField r = reinitialize(d, 200);
  double err = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const double exact = std::hypot(i * grid.h - 0.5, j * grid.h - 0.5) - 0.25;
      if (std::abs(exact) < 6.0 * grid.h) err = std::max(err, std::abs(r(i, j) - exact));
    }
  }
  CHECK(err < 0.25 * grid.h);
}

TEST_CASE("Hausdorff distance") {
  const FrontCurve a = circle_curve({0.5, 0.5}, 0.25, 1024);
  const FrontCurve b = circle_curve({0.5, 0.5}, 0.20, 1024);
  CHECK(hausdorff(a, a) == 0.0);
  CHECK(std::abs(hausdorff(a, b) - 0.05) <= 1e-4);
  const double h = 1.0 / 256.0;
  CHECK(std::abs(hausdorff(a, translated(a, {h, 0.0})) - h) <= 1e-6);
  CHECK(hausdorff(a, translated(a, {1.0, -1.0})) < 1e-12);
  CHECK(distance_to_curve({0.5, 0.5}, a) == doctest::Approx(0.25).epsilon(1e-4));
}

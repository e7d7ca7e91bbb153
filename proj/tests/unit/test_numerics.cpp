#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "anisoac/periodic_spline.hpp"
#include "anisoac/polynomial.hpp"
#include "anisoac/quadrature.hpp"

using namespace anisoac;

TEST_CASE("polynomial arithmetic and calculus") {
  const Polynomial p{1.0, -2.0, 0.0, 3.0};  // 1 - 2s + 3s^3
  CHECK(p(2.0) == doctest::Approx(21.0));
  CHECK(p.degree() == 3);
  CHECK(p.derivative()(2.0) == doctest::Approx(-2.0 + 9.0 * 4.0));
  CHECK(p.antiderivative()(2.0) == doctest::Approx(2.0 - 4.0 + 12.0));
  CHECK(p.shifted(0.5)(1.5) == doctest::Approx(p(2.0)));
  CHECK((p * p)(1.3) == doctest::Approx(p(1.3) * p(1.3)));
  CHECK((p - p).is_zero());
}

TEST_CASE("polynomial roots") {
  const Polynomial q = Polynomial::from_roots({-1.0, 0.25, 2.0});
  const auto r = q.real_roots(-10.0, 10.0);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r[2] == doctest::Approx(2.0).epsilon(1e-12));
  // double root without a sign change is not reported
  CHECK(Polynomial::from_roots({1.0, 1.0}).real_roots(-5.0, 5.0).empty());
}

TEST_CASE("cyclic tridiagonal solve matches a dense solve") {
  const int n = 7;
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    lo[i] = 1.0 + 0.1 * i;
    up[i] = 0.5 - 0.05 * i;
    di[i] = 4.0 + i;
    rhs[i] = std::sin(i + 1.0);
    a(i, i) = di[i];
    a(i, (i + n - 1) % n) += lo[i];
    a(i, (i + 1) % n) += up[i];
  }
  const auto x = solve_cyclic_tridiagonal(lo, di, up, rhs);
  const Eigen::VectorXd ref = a.lu().solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), n));
  for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref(i)).epsilon(1e-12));
}

TEST_CASE("periodic spline interpolates a trigonometric function") {
  const int n = 64;
  const double period = 2.0 * std::numbers::pi;
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = std::sin(k * period / n) + 0.3 * std::cos(2.0 * k * period / n);
  const PeriodicSpline s = PeriodicSpline::uniform(v, period);
  double err = 0.0, derr = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double t = -3.0 + 10.0 * k / 999.0;
    err = std::max(err, std::abs(s.value(t) - (std::sin(t) + 0.3 * std::cos(2.0 * t))));
    derr = std::max(derr, std::abs(s.first_derivative(t) - (std::cos(t) - 0.6 * std::sin(2.0 * t))));
  }
  CHECK(err < 1e-5);
  CHECK(derr < 1e-3);
}

TEST_CASE("Gauss-Kronrod quadrature") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-13));
  // infinite slope at both ends: the error estimate exceeds a tight tolerance
  CHECK_THROWS_AS(integrate([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0, 1e-12), Error);
  CHECK(integrate([](double x) { return x; }, 1.0, 1.0) == 0.0);
}

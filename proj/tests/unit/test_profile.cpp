#include <doctest.h>

#include <cmath>

#include "anisoac/mobility.hpp"
#include "anisoac/profile.hpp"

using namespace anisoac;

namespace {

ModelSpec cubic(const DiffusivitySpec& d) { return ModelSpec(ReactionSpec::cubic(), d, 0.02); }

}  // namespace

TEST_CASE("standing wave of the cubic is tanh(z / sqrt(2 a))") {
  const WaveProfile p = solve_standing_wave(cubic(DiffusivitySpec::identity()), unit_vector(1.1));
  double err = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) err = std::max(err, std::abs(p.u0[k] - std::tanh(p.z[k] / std::sqrt(2.0))));
  CHECK(err < 1e-6);
  CHECK(p.u0[p.center()] == 0.0);
  CHECK(p.decay_rate == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
  CHECK(p.value(0.37) == doctest::Approx(std::tanh(0.37 / std::sqrt(2.0))).epsilon(1e-9));
  CHECK(p.value(100.0) == doctest::Approx(1.0));

  // constant D: a_e U0'' + f(U0) = 0, so z scales by sqrt(a_e)
  Vec e(2);
  e << 0.0, 1.0;
  const WaveProfile q = solve_standing_wave(cubic(DiffusivitySpec::diag({1.0, 2.0})), e);
  double err2 = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) err2 = std::max(err2, std::abs(q.u0[k] - std::tanh(q.z[k] / 2.0)));
  CHECK(err2 < 1e-6);
}

TEST_CASE("profile second derivative") {
  const ModelSpec spec = cubic(DiffusivitySpec::identity());
  const WaveProfile p = solve_standing_wave(spec, unit_vector(0.0));
  const auto uzz = profile_second_derivative(spec, p);
  double err = 0.0;
  for (std::size_t k = 0; k < p.size(); k += 97) {
    const double t = std::tanh(p.z[k] / std::sqrt(2.0));
    err = std::max(err, std::abs(uzz[k] - (-t * (1.0 - t * t))));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("linearized problem") {
  const ModelSpec spec = cubic(DiffusivitySpec::identity());
  const WaveProfile p = solve_standing_wave(spec, unit_vector(0.3));

  SUBCASE("zero right-hand side") {
    const std::vector<double> g(p.size(), 0.0);
    for (double v : solve_linearized(p, g)) CHECK(v == 0.0);
  }

  SUBCASE("flux derivative: psi = z U0_z / 2") {
    // L(z U0_z) = 2 U0_zz for L = d_zz + f'(U0), and here G = U0_zz
    const auto g = rhs_flux_derivative(spec, p, 0, 0);
    CHECK(std::abs(solvability_residual(p, g)) < 1e-8);
    const auto psi = solve_linearized(p, g);
    double err = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (std::abs(p.z[k]) <= 10.0) err = std::max(err, std::abs(psi[k] - 0.5 * p.z[k] * p.u0z[k]));
    }
    CHECK(err < 1e-5);
    CHECK(psi[p.center()] == 0.0);
    CHECK(linearized_equation_residual(spec, p, psi, g) < 1e-5);
  }

  SUBCASE("U0_z is not solvable") {
    try {
      solve_linearized(p, p.u0z);
      FAIL("expected NotSolvable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSolvable);
    }
  }
}

TEST_CASE("mobility-type right-hand side is solvable") {
  // int (mu1_11 - D_11(U0)) U0_z sqrt(W) dz = lambda mu1_11 - int D_11 sqrt(W) ds = 0
  const ModelSpec spec = cubic(DiffusivitySpec::scalar_polynomial(2, {1.0, 0.0, 0.5}));
  const Vec e = unit_vector(0.3);
  const WaveProfile p = solve_standing_wave(spec, e);
  const double mu1 = mu_tensor(spec, e).mu1(0, 0);
  std::vector<double> g(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) g[k] = (mu1 - (1.0 + 0.5 * p.u0[k] * p.u0[k])) * p.u0z[k];
  CHECK(std::abs(solvability_residual(p, g)) < 1e-8);
  CHECK_NOTHROW(solve_linearized(p, g));
}

TEST_CASE("direction derivative of the profile") {
  SUBCASE("identity: no dependence on e") {
    const ModelSpec spec = cubic(DiffusivitySpec::identity());
    const WaveProfile p = solve_standing_wave(spec, unit_vector(0.4));
    for (int j = 0; j < 2; ++j) {
      double m = 0.0;
      for (double v : direction_derivative_profile(spec, p, j)) m = std::max(m, std::abs(v));
      CHECK(m < 1e-12);
    }
  }
  SUBCASE("constant diag(1, 2) against differentiating tanh(z / sqrt(2 a_e))") {
    const ModelSpec spec = cubic(DiffusivitySpec::diag({1.0, 2.0}));
    const double th = 0.5;
    const Vec e = unit_vector(th);
    const WaveProfile p = solve_standing_wave(spec, e);
    const double a = std::cos(th) * std::cos(th) + 2.0 * std::sin(th) * std::sin(th);
    Vec grad(2);
    grad << 2.0 * e(0), 4.0 * e(1);
    grad -= e * e.dot(grad);
    for (int j = 0; j < 2; ++j) {
      const auto u = direction_derivative_profile(spec, p, j);
      double err = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (std::abs(p.z[k]) > 10.0) continue;
        const double x = p.z[k] / std::sqrt(2.0 * a);
        const double sech2 = 1.0 - std::tanh(x) * std::tanh(x);
        const double exact = -sech2 * x / (2.0 * a) * grad(j);
        err = std::max(err, std::abs(u[k] - exact));
      }
      CHECK(err < 1e-5);
      CHECK(u[p.center()] == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("profile family interpolates in angle") {
  const ModelSpec spec = cubic(DiffusivitySpec::diag({1.0, 2.0}));
  const ProfileFamily fam(spec, 64, 12.0, 1e-2);
  CHECK(fam.size() == 64);
  for (double th : {0.0, 0.3, 2.0}) {
    const double a = std::cos(th) * std::cos(th) + 2.0 * std::sin(th) * std::sin(th);
    CHECK(fam.value(1.0, th) == doctest::Approx(std::tanh(1.0 / std::sqrt(2.0 * a))).epsilon(2e-3));
  }
  const ProfileFamily iso(cubic(DiffusivitySpec::identity()), 64);
  CHECK(iso.size() == 1);
}

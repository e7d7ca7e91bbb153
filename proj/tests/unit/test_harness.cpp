#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anisoac/harness.hpp"

using namespace anisoac;

namespace {

double cubic_flow(double tau, double xi) {
  return xi * std::exp(tau) / std::sqrt(1.0 + xi * xi * (std::exp(2.0 * tau) - 1.0));
}

ModelSpec cubic_identity(double eps) { return ModelSpec(ReactionSpec::cubic(), DiffusivitySpec::identity(), eps); }

}  // namespace

TEST_CASE("reaction ODE") {
  const ReactionSpec f = ReactionSpec::cubic();
  // 0.5 e / sqrt(1 + 0.25 (e^2 - 1))
  CHECK(solve_reaction_ode(f, 0.5, 1.0).y == doctest::Approx(0.843347).epsilon(1e-6));
  CHECK(solve_reaction_ode(f, 0.5, 1.0).y == doctest::Approx(cubic_flow(1.0, 0.5)).epsilon(1e-12));
  CHECK(solve_reaction_ode(f, 1.0, 3.0).y == 1.0);
  CHECK(solve_reaction_ode(f, 0.0, 3.0).y == 0.0);
  CHECK(solve_reaction_ode(f, 0.0, 3.0).y_xi == doctest::Approx(std::exp(3.0)).epsilon(1e-9));
  // Y_xi = dY/dxi of the closed form, by a central difference
  const double d = (cubic_flow(2.0, 0.3 + 1e-5) - cubic_flow(2.0, 0.3 - 1e-5)) / 2e-5;
  CHECK(solve_reaction_ode(f, 0.3, 2.0).y_xi == doctest::Approx(d).epsilon(1e-7));
  // stable root: perturbations decay
  CHECK(solve_reaction_ode(f, 1.0, 2.0).y_xi < 1.0);
}

TEST_CASE("reaction ODE blowup outside a bistable well") {
  ReactionSpec grow = ReactionSpec::cubic();
  grow.f = Polynomial{0.0, 0.0, 1.0};  // Y' = Y^2 blows up at tau = 1 from Y(0) = 1
  grow.f_prime = grow.f.derivative();
  try {
    solve_reaction_ode(grow, 1.0, 2.0);
    FAIL("expected Blowup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Blowup);
  }
}

TEST_CASE("generation time") {
  CHECK(generation_time(ReactionSpec::cubic(), 0.01) == doctest::Approx(4.60517e-4).epsilon(1e-5));
  const ReactionSpec fast = ReactionSpec::shifted_cubic(-1.0, 0.0, 1.0, 2.0);
  CHECK(generation_time(fast, 0.01) == doctest::Approx(0.5 * generation_time(ReactionSpec::cubic(), 0.01)));
}

TEST_CASE("generation lemma constants") {
  const ReactionSpec f = ReactionSpec::cubic();
  const GenerationLemmaReport rep = check_generation_lemma(f, {});
  CHECK(rep.passed);
  CHECK(rep.slope_positive);
  CHECK(rep.bounds_hold);
  CHECK(std::isfinite(rep.c_y));
  // the threshold statement at the fitted constant, evaluated on the closed form
  const double eps = 0.01;
  CHECK(cubic_flow(std::abs(std::log(eps)), f.alpha_mid + rep.c_y * eps) >= f.alpha_plus - 0.1);
  CHECK(cubic_flow(std::abs(std::log(eps)), f.alpha_mid - rep.c_y * eps) <= f.alpha_minus + 0.1);

  GenerationLemmaSamples bad;
  bad.eta = f.eta0();
  try {
    check_generation_lemma(f, bad);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
}

TEST_CASE("grid selection") {
  CHECK(grid_for_epsilon(0.04) == 128);
  CHECK(grid_for_epsilon(0.02) == 256);
  CHECK(grid_for_epsilon(0.014) == 512);
  CHECK(grid_for_epsilon(0.01) == 512);
  CHECK(grid_for_epsilon(0.04, 256) == 256);
}

TEST_CASE("shapes") {
  const ShapeSpec s = parse_shape("circle:R=0.2,cx=0.4,cy=0.6");
  CHECK(s.kind == "circle");
  CHECK(s.radius == 0.2);
  CHECK(s.centre.x() == 0.4);
  CHECK(s.centre.y() == 0.6);
  const ShapeSpec e = parse_shape("ellipse:a=0.3,b=0.1");
  CHECK(signed_area(shape_curve(e)) == doctest::Approx(std::numbers::pi * 0.03).epsilon(1e-3));
  CHECK_THROWS_AS(parse_shape("square:R=1"), Error);
  CHECK_THROWS_AS(parse_shape("circle:R=abc"), Error);
}

TEST_CASE("tanh ansatz around a circle") {
  const double eps = 0.04;
  const ModelSpec spec = cubic_identity(eps);
  const Grid grid(64);
  const ScalarField u = tanh_ansatz(spec, shape_curve({}), grid);
  double err = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const double d = std::hypot(i * grid.h - 0.5, j * grid.h - 0.5) - 0.25;
      if (std::abs(d) < 0.15) err = std::max(err, std::abs(u(i, j) - std::tanh(d / (std::sqrt(2.0) * eps))));
    }
  }
  CHECK(err < 1e-2);
}

TEST_CASE("constant initial data") {
  GenerationConfig cfg{cubic_identity(0.04), {0.04}, 0, {}, 0.1, 10.0};
  cfg.initial.kind = "constant";
  cfg.initial.amplitude = 1.0;
  GenerationReport top = generation_experiment(cfg);
  CHECK(top.passed);
  CHECK(top.rows[0].m0 == 0.0);
  cfg.initial.amplitude = 0.0;
  GenerationReport mid = generation_experiment(cfg);
  CHECK(mid.passed);
  CHECK(mid.rows[0].u_max == 0.0);
  CHECK(mid.rows[0].m0 == 0.0);
  cfg.eta_g = 1.0;
  CHECK_THROWS_AS(generation_experiment(cfg), Error);
}

TEST_CASE("fitted threshold constant") {
  const Grid grid(4);
  ScalarField u0(grid, 0.0), u(grid, 1.0);
  u0.values = {0.05, 0.2, -0.1, -0.3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  u.values[0] = 0.5;    // above alpha but not yet near alpha_+
  u.values[2] = -0.95;  // fine
  u.values[3] = 0.0;    // below alpha but not near alpha_-
  for (std::size_t k = 4; k < 16; ++k) u.values[k] = 0.0;
  CHECK(fit_m0(u0, u, ReactionSpec::cubic(), 0.01, 0.1) == doctest::Approx(30.0));
}

TEST_CASE("power-law fit") {
  const std::vector<double> x = {0.02, 0.014, 0.01};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.5));
  const auto [p, c] = fit_power_law(x, y);
  CHECK(p == doctest::Approx(1.5));
  CHECK(c == doctest::Approx(3.0));
}

TEST_CASE("propagation sweep with a single eps has no fitted order") {
  PropagationConfig cfg{cubic_identity(0.04), {0.04}, 0, {}, 0.002, {0.001}, 0.1, 10.0, 1e-5, 64};
  const ConvergenceReport rep = propagation_sweep(cfg);
  REQUIRE(rep.rows.size() == 1);
  CHECK_FALSE(rep.order.has_value());
  CHECK(rep.rows[0].checkpoints.size() == 2);
  CHECK(rep.rows[0].distance < 0.04);
  CHECK(rep.rows[0].violation_fraction == 0.0);
  CHECK(rep.passed);
}

TEST_CASE("propagation sweep rejects a front that vanishes") {
  PropagationConfig cfg{cubic_identity(0.04), {0.04}, 0, {}, 0.05, {}, 0.1, 10.0, 1e-5, 64};
  cfg.shape.radius = 0.1;
  try {
    propagation_sweep(cfg);
    FAIL("expected ExtinctionBeforeEnd");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExtinctionBeforeEnd);
  }
}

TEST_CASE("shrinking circle in the phase-field equation") {
  const double eps = 0.02;
  const ModelSpec spec = cubic_identity(eps);
  const Grid grid(grid_for_epsilon(eps));
  const ScalarField u0 = tanh_ansatz(spec, shape_curve({}), grid);
  const FrontCurve c = extract_level_set(simulate(u0, spec, 0.01).back(), 0.0);
  const double area_radius = std::sqrt(signed_area(c) / std::numbers::pi);
  CHECK(std::abs(area_radius - std::sqrt(0.0625 - 0.02)) <= 5e-3);
}

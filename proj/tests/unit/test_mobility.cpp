#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anisoac/mobility.hpp"

using namespace anisoac;

namespace {

const double kLambda = 2.0 * std::sqrt(2.0) / 3.0;

ModelSpec diag12() { return ModelSpec(ReactionSpec::cubic(), DiffusivitySpec::diag({1.0, 2.0}), 0.02); }

Vec axis(int i) {
  Vec e = Vec::Zero(2);
  e(i) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("identity diffusivity: lambda = 2 sqrt(2) / 3 and mu = I") {
  const ModelSpec spec(ReactionSpec::cubic(), DiffusivitySpec::identity(), 0.02);
  for (double th : {0.0, 0.9, 4.0}) {
    const MobilityValue m = mu_tensor(spec, unit_vector(th));
    CHECK(m.lambda == doctest::Approx(kLambda).epsilon(1e-12));
    CHECK((m.mu - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(m.mu2.cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(tangential_form(spec, unit_vector(0.2), unit_vector(0.2 + std::numbers::pi / 2)) ==
        doctest::Approx(kLambda).epsilon(1e-10));
}

TEST_CASE("constant diag(1, 2) along the axes") {
  const ModelSpec spec = diag12();
  // mu = D - grad sqrt(a) (x) grad sqrt(a); the ambient gradient at e = (1, 0)
  // is (1, 0), the intrinsic one vanishes
  const MobilityValue mx = mu_tensor(spec, axis(0), GradientConvention::Ambient);
  CHECK(mx.lambda == doctest::Approx(kLambda));
  CHECK(mx.mu(0, 0) == doctest::Approx(0.0).scale(1.0));
  CHECK(mx.mu(1, 1) == doctest::Approx(2.0));
  const MobilityValue mxi = mu_tensor(spec, axis(0));
  CHECK(mxi.mu(0, 0) == doctest::Approx(1.0));
  CHECK(mxi.mu(1, 1) == doctest::Approx(2.0));
  CHECK(tangential_form(spec, axis(0), axis(1)) == doctest::Approx(2.0 * kLambda));

  const MobilityValue my = mu_tensor(spec, axis(1), GradientConvention::Ambient);
  CHECK(my.lambda == doctest::Approx(4.0 / 3.0));
  CHECK(my.mu(0, 0) == doctest::Approx(1.0));
  CHECK(my.mu(1, 1) == doctest::Approx(0.0).scale(1.0));
  CHECK(tangential_form(spec, axis(1), axis(0)) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("tangential contractions agree between gradient conventions") {
  const std::vector<std::vector<std::vector<double>>> c = {{{1.0, 0.0, 0.4}, {0.2, 0.0, 0.1}},
                                                           {{0.2, 0.0, 0.1}, {1.5, 0.0, 0.3}}};
  const ModelSpec spec(ReactionSpec::cubic(), DiffusivitySpec::polynomial(c), 0.02);
  REQUIRE(validate_model(spec).passed);
  for (double th : {0.1, 1.3, 2.9}) {
    const Vec e = unit_vector(th);
    const Vec t = unit_vector(th + std::numbers::pi / 2);
    const double in = t.dot(mu_tensor(spec, e, GradientConvention::Intrinsic).mu * t);
    const double am = t.dot(mu_tensor(spec, e, GradientConvention::Ambient).mu * t);
    CHECK(in == doctest::Approx(am).epsilon(1e-9));
    const double form = tangential_form(spec, e, t);
    CHECK(form >= tangential_lower_bound(spec, e) - 1e-10);
  }
}

TEST_CASE("tangential form requires orthogonal unit vectors") {
  const ModelSpec spec = diag12();
  try {
    tangential_form(spec, axis(0), unit_vector(1.0));
    FAIL("expected NotTangential");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTangential);
  }
}

TEST_CASE("mobility table interpolation") {
  const ModelSpec spec = diag12();
  const MobilityTable tab = tabulate_mobility(spec, 256);
  double err = 0.0, terr = 0.0;
  for (std::size_t k = 0; k < tab.size(); k += 5) {
    const double th = tab.angle(k) + std::numbers::pi / 256.0;
    const MobilityValue direct = mu_tensor(spec, unit_vector(th));
    const MobilityTable::Sample s = tab.at_angle(th);
    err = std::max(err, (s.mu - direct.mu).cwiseAbs().maxCoeff());
    const double c = std::cos(th), sn = std::sin(th);
    terr = std::max(terr, std::abs(tab.tangential(th) - 2.0 / (c * c + 2.0 * sn * sn)));
  }
  CHECK(err < 1e-6);
  CHECK(terr < 1e-6);
  CHECK(tab.max_eigenvalue() == doctest::Approx(2.0).epsilon(1e-6));
  // 64 angles: interpolation error of the fourth-order spline is ~2e-5
  const MobilityTable coarse = tabulate_mobility(spec, 64);
  CHECK(std::abs(coarse.tangential(0.3) - 2.0 / (std::cos(0.3) * std::cos(0.3) + 2.0 * std::sin(0.3) * std::sin(0.3))) < 1e-4);

  const MobilityTable iso = MobilityTable::constant(Eigen::Matrix2d::Identity() * 0.5);
  CHECK(iso.tangential(1.234) == doctest::Approx(0.5));
  CHECK(iso.max_eigenvalue() == doctest::Approx(0.5));
}

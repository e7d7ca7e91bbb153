#include "anisoac/mobility.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "anisoac/quadrature.hpp"

namespace anisoac {

namespace {

// Integrand of lambda mu2_ij at s (before the -1/2 factor).
double mu2_integrand(const DirectionalWell& well, double s, int i, int j, GradientConvention conv) {
  const double w = well.w(s);
  if (w <= 0.0) return 0.0;
  const Vec dw = well.grad_w(s, conv);
  const Vec da = well.grad_a(s, conv);
  const double sqrt_w = std::sqrt(w);
  const double d_ratio = da(j) / sqrt_w - well.a(s) * dw(j) / (2.0 * w * sqrt_w);
  return dw(i) * d_ratio;
}

void check_endpoint_decay(const DirectionalWell& well, int i, int j, GradientConvention conv) {
  const auto& r = well.spec().reaction();
  const double span = r.alpha_plus - r.alpha_minus;
  for (double sign : {+1.0, -1.0}) {
    const double root = sign > 0 ? r.alpha_minus : r.alpha_plus;
    const double near = std::abs(mu2_integrand(well, root + sign * 1e-7 * span, i, j, conv));
    const double far = std::abs(mu2_integrand(well, root + sign * 1e-3 * span, i, j, conv));
    if (!std::isfinite(near) || near > 10.0 * far + 1e-12) {
      std::ostringstream msg;
      msg << "d_" << j << "(a_e / sqrt W_e) paired with d_" << i << " W_e does not vanish at s = " << root;
      throw Error(ErrorCode::SingularEndpoint, msg.str());
    }
  }
}

}  // namespace

double lambda_e(const ModelSpec& spec, const Vec& e) {
  const DirectionalWell well(spec, e);
  const auto& r = spec.reaction();
  return integrate([&](double s) { return std::sqrt(well.w(s)); }, r.alpha_minus, r.alpha_plus);
}

MobilityValue mu_tensor(const ModelSpec& spec, const Vec& e, GradientConvention conv) {
  const DirectionalWell well(spec, e);
  const auto& r = spec.reaction();
  const auto& d = spec.diffusivity();
  const int n = spec.dim();

  MobilityValue out;
  out.lambda = integrate([&](double s) { return std::sqrt(well.w(s)); }, r.alpha_minus, r.alpha_plus);
  out.mu1 = Mat(n, n);
  out.mu2 = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Polynomial& dij = d.entry(i, j);
      out.mu1(i, j) =
          integrate([&](double s) { return dij(s) * std::sqrt(well.w(s)); }, r.alpha_minus, r.alpha_plus) /
          out.lambda;
      check_endpoint_decay(well, i, j, conv);
      out.mu2(i, j) =
          -0.5 * integrate([&](double s) { return mu2_integrand(well, s, i, j, conv); }, r.alpha_minus, r.alpha_plus) /
          out.lambda;
    }
  }
  out.mu = out.mu1 + out.mu2;
  if (!out.mu.allFinite()) throw Error(ErrorCode::QuadratureFailure, "mobility has non-finite entries");
  return out;
}

double tangential_form(const ModelSpec& spec, const Vec& e, const Vec& eta) {
  require_unit(e);
  require_unit(eta);
  if (std::abs(e.dot(eta)) > 1e-9) {
    std::ostringstream msg;
    msg << "e . eta = " << e.dot(eta);
    throw Error(ErrorCode::NotTangential, msg.str());
  }
  const MobilityValue m = mu_tensor(spec, e);
  return m.lambda * eta.dot(m.mu * eta);
}

double tangential_lower_bound(const ModelSpec& spec, const Vec& e) {
  const DirectionalWell well(spec, e);
  const auto& r = spec.reaction();
  const auto& d = spec.diffusivity();
  return integrate(
      [&](double s) {
        Eigen::SelfAdjointEigenSolver<Mat> es(d.at(s), Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0) * std::sqrt(well.w(s));
      },
      r.alpha_minus, r.alpha_plus);
}

MobilityTable::MobilityTable(std::vector<double> lambda, std::vector<Eigen::Matrix2d> mu)
    : lambda_(std::move(lambda)), mu_(std::move(mu)) {
  const double two_pi = 2.0 * std::numbers::pi;
  lambda_spline_ = PeriodicSpline::uniform(lambda_, two_pi);
  for (int c = 0; c < 4; ++c) {
    std::vector<double> v(mu_.size());
    for (std::size_t k = 0; k < mu_.size(); ++k) v[k] = mu_[k](c / 2, c % 2);
    mu_spline_[static_cast<std::size_t>(c)] = PeriodicSpline::uniform(v, two_pi);
  }
  std::vector<double> tang(mu_.size());
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    const double th = angle(k);
    const Eigen::Vector2d tau(-std::sin(th), std::cos(th));
    tang[k] = tau.dot(mu_[k] * tau);
  }
  tangential_spline_ = PeriodicSpline::uniform(tang, two_pi);
  const std::size_t fine = 4 * mu_.size();
  for (std::size_t k = 0; k < fine; ++k) {
    const Eigen::Matrix2d m = at_angle(two_pi * static_cast<double>(k) / static_cast<double>(fine)).mu;
    const Eigen::Matrix2d sym = 0.5 * (m + m.transpose());
    max_eigenvalue_ = std::max(max_eigenvalue_, Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(sym).eigenvalues()(1));
  }
}

MobilityTable MobilityTable::constant(const Eigen::Matrix2d& mu, double lambda) {
  MobilityTable t;
  t.lambda_ = {lambda};
  t.mu_ = {mu};
  t.constant_ = true;
  const Eigen::Matrix2d sym = 0.5 * (mu + mu.transpose());
  t.max_eigenvalue_ = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(sym).eigenvalues()(1);
  return t;
}

double MobilityTable::angle(std::size_t k) const {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(lambda_.size());
}

MobilityTable::Sample MobilityTable::at_angle(double theta) const {
  if (constant_) return {lambda_[0], mu_[0]};
  Sample s;
  s.lambda = lambda_spline_.value(theta);
  s.mu << mu_spline_[0].value(theta), mu_spline_[1].value(theta), mu_spline_[2].value(theta),
      mu_spline_[3].value(theta);
  return s;
}

MobilityTable::Sample MobilityTable::at(const Eigen::Vector2d& e) const {
  if (constant_) return {lambda_[0], mu_[0]};
  return at_angle(std::atan2(e.y(), e.x()));
}

double MobilityTable::tangential(double theta) const {
  if (!constant_) return tangential_spline_.value(theta);
  const Eigen::Vector2d tau(-std::sin(theta), std::cos(theta));
  return tau.dot(mu_[0] * tau);
}

MobilityTable tabulate_mobility(const ModelSpec& spec, int m_angles) {
  if (spec.dim() != 2) throw Error(ErrorCode::ConfigError, "mobility tables are two-dimensional");
  if (m_angles < 64) throw Error(ErrorCode::ConfigError, "mobility table needs at least 64 angles");
  std::vector<double> lambda(static_cast<std::size_t>(m_angles));
  std::vector<Eigen::Matrix2d> mu(static_cast<std::size_t>(m_angles));
  for (int k = 0; k < m_angles; ++k) {
    const MobilityValue v = mu_tensor(spec, unit_vector(2.0 * std::numbers::pi * k / m_angles));
    lambda[static_cast<std::size_t>(k)] = v.lambda;
    mu[static_cast<std::size_t>(k)] = v.mu;
  }
  return MobilityTable(std::move(lambda), std::move(mu));
}

}  // namespace anisoac

#include "anisoac/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace anisoac {

namespace {

constexpr double kFreezeW = 1e-16;

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double cxx = sxx - sx * sx / n;
  const double cxy = sxy - sx * sy / n;
  const double cyy = syy - sy * sy / n;
  LineFit fit;
  fit.slope = cxy / cxx;
  fit.r2 = cyy > 0.0 ? cxy * cxy / (cxx * cyy) : 1.0;
  return fit;
}

// Log-linear fit of the distance to the asymptote over the outer half of one tail.
LineFit tail_fit(const WaveProfile& p, bool right) {
  std::vector<double> x, y;
  const std::size_t c = p.center();
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double zz = p.z[k];
    if (right ? (zz < 0.5 * p.z_max) : (zz > -0.5 * p.z_max)) continue;
    const double gap = right ? p.alpha_plus - p.u0[k] : p.u0[k] - p.alpha_minus;
    if (gap <= 0.0 || k == c) continue;
    x.push_back(std::abs(zz));
    y.push_back(std::log(gap));
  }
  if (x.size() < 3) return {};
  return fit_line(x, y);
}

}  // namespace

double WaveProfile::value(double zz) const {
  if (zz <= z.front()) return u0.front();
  if (zz >= z.back()) return u0.back();
  const double x = (zz - z.front()) / h_z;
  const std::size_t k = std::min(static_cast<std::size_t>(x), z.size() - 2);
  const double t = x - static_cast<double>(k);
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * u0[k] + (t3 - 2 * t2 + t) * h_z * u0z[k] + (-2 * t3 + 3 * t2) * u0[k + 1] +
         (t3 - t2) * h_z * u0z[k + 1];
}

double WaveProfile::slope(double zz) const {
  if (zz <= z.front() || zz >= z.back()) return 0.0;
  const double x = (zz - z.front()) / h_z;
  const std::size_t k = std::min(static_cast<std::size_t>(x), z.size() - 2);
  const double t = x - static_cast<double>(k);
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * u0[k] + (-6 * t2 + 6 * t) * u0[k + 1]) / h_z + (3 * t2 - 4 * t + 1) * u0z[k] +
         (3 * t2 - 2 * t) * u0z[k + 1];
}

WaveProfile solve_standing_wave(const ModelSpec& spec, const Vec& e, double z_max, double h_z) {
  if (!(z_max >= 10.0) || !(h_z > 0.0 && h_z <= 1e-2))
    throw Error(ErrorCode::ConfigError, "standing wave needs z_max >= 10 and 0 < h_z <= 1e-2");
  const DirectionalWell well(spec, e);
  const auto& r = spec.reaction();

  const auto half = static_cast<std::size_t>(std::llround(z_max / h_z));
  const std::size_t n = 2 * half + 1;
  WaveProfile p;
  p.e = e;
  p.h_z = h_z;
  p.z_max = static_cast<double>(half) * h_z;
  p.alpha_minus = r.alpha_minus;
  p.alpha_mid = r.alpha_mid;
  p.alpha_plus = r.alpha_plus;
  p.z.resize(n);
  p.u0.resize(n);
  for (std::size_t k = 0; k < n; ++k) p.z[k] = (static_cast<double>(k) - static_cast<double>(half)) * h_z;

  // dU/dz = sqrt(W_e(U)) / a_e(U); slope frozen at the roots and outside the well.
  const auto slope = [&](double u) {
    if (u <= r.alpha_minus || u >= r.alpha_plus) return 0.0;
    const double w = well.w(u);
    return w < kFreezeW ? 0.0 : std::sqrt(w) / well.a(u);
  };

  p.u0[half] = r.alpha_mid;
  for (int dir : {+1, -1}) {
    const double h = dir * h_z;
    double u = r.alpha_mid;
    for (std::size_t step = 1; step <= half; ++step) {
      const double k1 = slope(u);
      const double k2 = slope(u + 0.5 * h * k1);
      const double k3 = slope(u + 0.5 * h * k2);
      const double k4 = slope(u + h * k3);
      double next = u + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      if (dir > 0 ? next < u : next > u) {
        std::ostringstream msg;
        msg << "non-monotone step at z = " << dir * static_cast<double>(step) * h_z;
        throw Error(ErrorCode::StallNearRoot, msg.str());
      }
      next = std::clamp(next, r.alpha_minus, r.alpha_plus);
      u = next;
      p.u0[dir > 0 ? half + step : half - step] = u;
    }
  }

  p.u0z.resize(n);
  p.a.resize(n);
  p.phi.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    p.a[k] = well.a(p.u0[k]);
    p.u0z[k] = slope(p.u0[k]);
    p.phi[k] = p.a[k] * p.u0z[k];
  }

  const LineFit right = tail_fit(p, true);
  const LineFit left = tail_fit(p, false);
  p.decay_rate = std::min(-right.slope, -left.slope);
  p.decay_r2 = std::min(right.r2, left.r2);

  const double gap = std::max(r.alpha_plus - p.u0.back(), p.u0.front() - r.alpha_minus);
  if (gap > 1e-3 * (r.alpha_plus - r.alpha_minus) || !(p.decay_rate > 0.0)) {
    std::ostringstream msg;
    msg << "profile does not reach its asymptotes on [-" << p.z_max << ", " << p.z_max << "]: end gap " << gap;
    throw Error(ErrorCode::ToleranceFailure, msg.str());
  }
  return p;
}

std::vector<double> profile_second_derivative(const ModelSpec& spec, const WaveProfile& profile) {
  const DirectionalWell well(spec, profile.e);
  const auto& f = spec.reaction().f;
  std::vector<double> out(profile.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double u = profile.u0[k];
    const double uz = profile.u0z[k];
    out[k] = -(f(u) + well.a_prime(u) * uz * uz) / profile.a[k];
  }
  return out;
}

std::vector<double> rhs_flux_derivative(const ModelSpec& spec, const WaveProfile& profile, int i, int j) {
  const Polynomial& dij = spec.diffusivity().entry(i, j);
  const Polynomial dij_prime = dij.derivative();
  const auto uzz = profile_second_derivative(spec, profile);
  std::vector<double> g(profile.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double u = profile.u0[k];
    const double uz = profile.u0z[k];
    g[k] = dij_prime(u) * uz * uz + dij(u) * uzz[k];
  }
  return g;
}

double solvability_residual(const WaveProfile& profile, std::span<const double> g) {
  double sum = 0.0;
  const std::size_t n = profile.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
    sum += w * g[k] * profile.phi[k];
  }
  return sum * profile.h_z;
}

std::vector<double> solve_linearized(const WaveProfile& profile, std::span<const double> g) {
  const std::size_t n = profile.size();
  if (g.size() != n) throw Error(ErrorCode::ConfigError, "right-hand side must be sampled on the profile grid");
  const double residual = solvability_residual(profile, g);
  if (std::abs(residual) > kSolvabilityTol) {
    std::ostringstream msg;
    msg << "solvability integral " << residual << " exceeds " << kSolvabilityTol;
    throw Error(ErrorCode::NotSolvable, msg.str());
  }
  const double h = profile.h_z;
  const std::size_t c = profile.center();
  const auto& phi = profile.phi;

  // Inner integral: from the left on z <= 0, minus the right remainder on z > 0.
  std::vector<double> inner(n, 0.0);
  double acc = 0.0;
  for (std::size_t k = 1; k <= c; ++k) {
    acc += 0.5 * h * (g[k - 1] * phi[k - 1] + g[k] * phi[k]);
    inner[k] = acc;
  }
  acc = 0.0;
  for (std::size_t k = n - 1; k-- > c + 1;) {
    acc += 0.5 * h * (g[k + 1] * phi[k + 1] + g[k] * phi[k]);
    inner[k] = -acc;
  }
  inner[n - 1] = 0.0;

  std::vector<double> ratio(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double p2 = phi[k] * phi[k];
    if (p2 < 1e-280) {
      if (inner[k] != 0.0) {
        std::ostringstream msg;
        msg << "(A_e(U0)_z)^2 underflows at z = " << profile.z[k] << " while the inner integral is " << inner[k];
        throw Error(ErrorCode::InnerSingularity, msg.str());
      }
      continue;
    }
    ratio[k] = inner[k] / p2;
  }

  std::vector<double> psi(n, 0.0);
  double v = 0.0;
  for (std::size_t k = c + 1; k < n; ++k) {
    v += 0.5 * h * (ratio[k - 1] + ratio[k]);
    psi[k] = profile.u0z[k] * v;
  }
  v = 0.0;
  for (std::size_t k = c; k-- > 0;) {
    v -= 0.5 * h * (ratio[k + 1] + ratio[k]);
    psi[k] = profile.u0z[k] * v;
  }
  psi[c] = 0.0;
  return psi;
}

double linearized_equation_residual(const ModelSpec& spec, const WaveProfile& profile, std::span<const double> psi,
                                    std::span<const double> g, double margin) {
  const auto& fp = spec.reaction().f_prime;
  const double h = profile.h_z;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < profile.size(); ++k) {
    if (std::abs(profile.z[k]) > profile.z_max - margin) continue;
    const double lap =
        (profile.a[k + 1] * psi[k + 1] - 2.0 * profile.a[k] * psi[k] + profile.a[k - 1] * psi[k - 1]) / (h * h);
    worst = std::max(worst, std::abs(lap + fp(profile.u0[k]) * psi[k] - g[k]));
  }
  return worst;
}

std::vector<double> direction_derivative_profile(const ModelSpec& spec, const WaveProfile& profile, int j,
                                                 GradientConvention conv) {
  if (j < 0 || j >= spec.dim()) throw Error(ErrorCode::ConfigError, "axis index out of range");
  const DirectionalWell well(spec, profile.e);
  const std::size_t n = profile.size();
  const std::size_t c = profile.center();

  // q(z) = d_j a / a - d_j W / (2 W) at s = U0(z); bounded, with finite limits in the tails.
  std::vector<double> q(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = profile.u0[k];
    const double w = well.w(u);
    const double da = well.grad_a(u, conv)(j);
    if (w < kFreezeW) {
      q[k] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double dw = well.grad_w(u, conv)(j);
    q[k] = da / well.a(u) - dw / (2.0 * w);
  }
  // Frozen tail points inherit the nearest finite value.
  for (std::size_t k = c + 1; k < n; ++k)
    if (std::isnan(q[k])) q[k] = q[k - 1];
  for (std::size_t k = c; k-- > 0;)
    if (std::isnan(q[k])) q[k] = q[k + 1];

  std::vector<double> out(n, 0.0);
  const double h = profile.h_z;
  double acc = 0.0;
  for (std::size_t k = c + 1; k < n; ++k) {
    acc += 0.5 * h * (q[k - 1] + q[k]);
    out[k] = -profile.u0z[k] * acc;
  }
  acc = 0.0;
  for (std::size_t k = c; k-- > 0;) {
    acc -= 0.5 * h * (q[k + 1] + q[k]);
    out[k] = -profile.u0z[k] * acc;
  }
  return out;
}

ProfileFamily::ProfileFamily(const ModelSpec& spec, int m_angles, double z_max, double h_z) {
  if (spec.dim() != 2) throw Error(ErrorCode::ConfigError, "profile family is two-dimensional");
  const auto& d = spec.diffusivity();
  const bool isotropic = d.entry(0, 1).is_zero() && d.entry(1, 0).is_zero() &&
                         d.entry(0, 0).coeffs() == d.entry(1, 1).coeffs();
  const int m = isotropic ? 1 : std::max(4, m_angles);
  for (int k = 0; k < m; ++k)
    profiles_.push_back(solve_standing_wave(spec, unit_vector(2.0 * std::numbers::pi * k / m), z_max, h_z));
}

double ProfileFamily::value(double z, double theta) const {
  if (profiles_.size() == 1) return profiles_[0].value(z);
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  const double x = t / two_pi * static_cast<double>(profiles_.size());
  const std::size_t k = std::min(static_cast<std::size_t>(x), profiles_.size() - 1);
  const double w = x - static_cast<double>(k);
  const std::size_t k1 = (k + 1) % profiles_.size();
  return (1.0 - w) * profiles_[k].value(z) + w * profiles_[k1].value(z);
}

}  // namespace anisoac

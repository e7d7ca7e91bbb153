#include "anisoac/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "anisoac/mobility.hpp"
#include "anisoac/profile.hpp"

namespace anisoac {

ReactionOdeState solve_reaction_ode(const ReactionSpec& reaction, double xi, double tau, double dtau) {
  const Polynomial& f = reaction.f;
  const Polynomial& fp = reaction.f_prime;
  const Polynomial fpp = fp.derivative();
  const auto rhs = [&](const ReactionOdeState& s) {
    const double d1 = fp(s.y);
    return ReactionOdeState{f(s.y), d1 * s.y_xi, fpp(s.y) * s.y_xi * s.y_xi + d1 * s.y_xixi};
  };
  const auto axpy = [](const ReactionOdeState& s, double h, const ReactionOdeState& k) {
    return ReactionOdeState{s.y + h * k.y, s.y_xi + h * k.y_xi, s.y_xixi + h * k.y_xixi};
  };
  ReactionOdeState s{xi, 1.0, 0.0};
  if (tau <= 0.0) return s;
  const int steps = std::max(1, static_cast<int>(std::ceil(tau / dtau)));
  const double h = tau / steps;
  for (int k = 0; k < steps; ++k) {
    const ReactionOdeState k1 = rhs(s);
    const ReactionOdeState k2 = rhs(axpy(s, 0.5 * h, k1));
    const ReactionOdeState k3 = rhs(axpy(s, 0.5 * h, k2));
    const ReactionOdeState k4 = rhs(axpy(s, h, k3));
    s.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    s.y_xi += h / 6.0 * (k1.y_xi + 2.0 * k2.y_xi + 2.0 * k3.y_xi + k4.y_xi);
    s.y_xixi += h / 6.0 * (k1.y_xixi + 2.0 * k2.y_xixi + 2.0 * k3.y_xixi + k4.y_xixi);
    if (!std::isfinite(s.y) || std::abs(s.y) > 1e6) {
      std::ostringstream msg;
      msg << "Y left every bounded region from xi = " << xi << " at tau = " << (k + 1) * h;
      throw Error(ErrorCode::Blowup, msg.str());
    }
  }
  return s;
}

double generation_time(const ReactionSpec& reaction, double epsilon) {
  return epsilon * epsilon * std::abs(std::log(epsilon)) / reaction.nu;
}

GenerationLemmaReport check_generation_lemma(const ReactionSpec& r, const GenerationLemmaSamples& samples) {
  if (!(samples.eta > 0.0 && samples.eta < r.eta0())) {
    std::ostringstream msg;
    msg << "eta = " << samples.eta << " must lie in (0, " << r.eta0() << ")";
    throw Error(ErrorCode::ConfigError, msg.str());
  }
  GenerationLemmaReport rep;
  rep.slope_positive = true;
  const double nu = r.nu;
  const double dtau = samples.tau_max / (samples.n_tau - 1);
  for (int a = 0; a < samples.n_xi; ++a) {
    const double xi = samples.xi_min + (samples.xi_max - samples.xi_min) * a / (samples.n_xi - 1);
    ReactionOdeState s{xi, 1.0, 0.0};
    for (int k = 1; k < samples.n_tau; ++k) {
      const double tau = k * dtau;
      // Continue from the previous sample; RK4 sub-steps of at most 1e-3.
      const ReactionOdeState inc = solve_reaction_ode(r, s.y, dtau);
      // Chain rule: d/dxi of the flow map composed with the earlier segment.
      s = ReactionOdeState{inc.y, inc.y_xi * s.y_xi, inc.y_xixi * s.y_xi * s.y_xi + inc.y_xi * s.y_xixi};
      if (!(s.y_xi > 0.0)) rep.slope_positive = false;
      rep.c_slope = std::max(rep.c_slope, s.y_xi * std::exp(-nu * tau));
      rep.c_curvature = std::max(rep.c_curvature, std::abs(s.y_xixi / s.y_xi) / std::expm1(nu * tau));
    }
  }

  rep.bounds_hold = true;
  const int fine = 4001;
  for (double eps : samples.eps) {
    const double tau = std::abs(std::log(eps)) / nu;
    for (int a = 0; a < fine; ++a) {
      const double xi = samples.xi_min + (samples.xi_max - samples.xi_min) * a / (fine - 1);
      const double y = solve_reaction_ode(r, xi, tau).y;
      if (y < r.alpha_minus - samples.eta || y > r.alpha_plus + samples.eta) rep.bounds_hold = false;
      if (xi > r.alpha_mid && y < r.alpha_plus - samples.eta)
        rep.c_threshold = std::max(rep.c_threshold, (xi - r.alpha_mid) / eps);
      if (xi < r.alpha_mid && y > r.alpha_minus + samples.eta)
        rep.c_threshold = std::max(rep.c_threshold, (r.alpha_mid - xi) / eps);
    }
  }
  rep.c_y = std::max({rep.c_slope, rep.c_curvature, rep.c_threshold});
  rep.passed = std::isfinite(rep.c_y) && rep.bounds_hold && rep.slope_positive;
  return rep;
}

ScalarField initial_field(const InitialSpec& spec, const Grid& grid) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (spec.kind == "cos") {
    const double k = two_pi * spec.mode;
    return sample_field(grid, [&](double x, double y) { return spec.amplitude * std::cos(k * x) * std::cos(k * y); });
  }
  if (spec.kind == "constant") return ScalarField(grid, spec.amplitude);
  if (spec.kind == "trig") {
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<int> mode(-3, 3);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    std::normal_distribution<double> coef(0.0, 1.0);
    struct Term {
      int kx, ky;
      double c, ph;
    };
    std::vector<Term> terms;
    for (int t = 0; t < spec.terms; ++t) terms.push_back({mode(rng), mode(rng), coef(rng), phase(rng)});
    ScalarField u = sample_field(grid, [&](double x, double y) {
      double v = 0.0;
      for (const auto& t : terms) v += t.c * std::cos(two_pi * (t.kx * x + t.ky * y) + t.ph);
      return v;
    });
    double peak = 0.0;
    for (double v : u.values) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
      for (double& v : u.values) v *= spec.amplitude / peak;
    return u;
  }
  throw Error(ErrorCode::ConfigError, "unknown initial data kind '" + spec.kind + "'");
}

FrontCurve shape_curve(const ShapeSpec& shape) {
  if (shape.kind == "circle") return circle_curve(shape.centre, shape.radius, shape.markers);
  if (shape.kind == "ellipse") {
    FrontCurve c;
    for (int k = 0; k < shape.markers; ++k) {
      const double th = 2.0 * std::numbers::pi * k / shape.markers;
      c.vertices.push_back(shape.centre + Point(shape.a * std::cos(th), shape.b * std::sin(th)));
    }
    return redistribute(c, shape.markers);
  }
  throw Error(ErrorCode::ConfigError, "unknown shape '" + shape.kind + "'");
}

ShapeSpec parse_shape(const std::string& text) {
  ShapeSpec s;
  const auto colon = text.find(':');
  s.kind = text.substr(0, colon);
  if (s.kind != "circle" && s.kind != "ellipse") throw Error(ErrorCode::ConfigError, "unknown shape '" + s.kind + "'");
  if (colon == std::string::npos) return s;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "shape parameter '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "shape parameter '" + item + "' is not a number");
    }
    if (key == "R" || key == "r")
      s.radius = value;
    else if (key == "a")
      s.a = value;
    else if (key == "b")
      s.b = value;
    else if (key == "cx")
      s.centre.x() = value;
    else if (key == "cy")
      s.centre.y() = value;
    else if (key == "markers")
      s.markers = static_cast<int>(value);
    else
      throw Error(ErrorCode::ConfigError, "unknown shape parameter '" + key + "'");
  }
  return s;
}

ScalarField tanh_ansatz(const ModelSpec& spec, const FrontCurve& curve, const Grid& grid, int profile_angles) {
  const ProfileFamily family(spec, profile_angles);
  const ScalarField d = signed_distance(curve, grid);
  const double eps = spec.epsilon();
  ScalarField u(grid);
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) {
      const double gx = d(i + 1, j) - d(i - 1, j);
      const double gy = d(i, j + 1) - d(i, j - 1);
      const double theta = gx == 0.0 && gy == 0.0 ? 0.0 : std::atan2(gy, gx);
      u(i, j) = family.value(d(i, j) / eps, theta);
    }
  return u;
}

int grid_for_epsilon(double epsilon, int minimum) {
  int n = 4;
  while (n < minimum || 1.0 / n > epsilon / 4.0) n *= 2;
  return n;
}

double fit_m0(const ScalarField& u0, const ScalarField& u, const ReactionSpec& r, double epsilon, double eta) {
  double m = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    const double a = u0.values[k] - r.alpha_mid;
    const double v = u.values[k];
    if (a > 0.0 && v < r.alpha_plus - eta) m = std::max(m, a / epsilon);
    if (a < 0.0 && v > r.alpha_minus + eta) m = std::max(m, -a / epsilon);
  }
  return m;
}

GenerationReport generation_experiment(const GenerationConfig& cfg, bool strict) {
  const ReactionSpec& r = cfg.model.reaction();
  if (!(cfg.eta_g > 0.0 && cfg.eta_g < r.eta0())) throw Error(ErrorCode::ConfigError, "eta_g must lie in (0, eta0)");
  GenerationReport rep;
  rep.eta_g = cfg.eta_g;
  rep.m0_ceiling = cfg.m0_ceiling;
  rep.passed = true;
  for (double eps : cfg.eps) {
    const ModelSpec spec = cfg.model.with_epsilon(eps);
    GenerationRow row;
    row.epsilon = eps;
    row.n = grid_for_epsilon(eps, cfg.grid_min);
    const Grid grid(row.n);
    const ScalarField u0 = initial_field(cfg.initial, grid);
    row.t_eps = generation_time(r, eps);
    const ScalarField u = simulate(u0, spec, row.t_eps).back();
    row.u_min = u.min();
    row.u_max = u.max();
    row.bounds_ok = row.u_min >= r.alpha_minus - cfg.eta_g && row.u_max <= r.alpha_plus + cfg.eta_g;
    row.m0 = fit_m0(u0, u, r, eps, cfg.eta_g);
    row.m0_ok = row.m0 <= cfg.m0_ceiling;
    if (!row.m0_ok && strict) {
      std::ostringstream msg;
      msg << "M0 = " << row.m0 << " exceeds the ceiling " << cfg.m0_ceiling << " at eps = " << eps;
      throw Error(ErrorCode::CeilingExceeded, msg.str());
    }
    rep.passed = rep.passed && row.bounds_ok && row.m0_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept)};
}

namespace {

double band_constant(const ScalarField& u, const ScalarField& d, const ReactionSpec& r, double eps, double eta) {
  double c = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    const double dist = d.values[k];
    const double v = u.values[k];
    if (dist > 0.0 && v < r.alpha_plus - eta) c = std::max(c, dist / eps);
    if (dist < 0.0 && v > r.alpha_minus + eta) c = std::max(c, -dist / eps);
  }
  return c;
}

// Same ratio test as band_constant so that c = band_constant leaves no violations.
double violation_fraction(const ScalarField& u, const ScalarField& d, const ReactionSpec& r, double eps, double c,
                          double eta) {
  std::size_t bad = 0;
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    const double dist = d.values[k];
    const double v = u.values[k];
    if (dist / eps > c && v < r.alpha_plus - eta) ++bad;
    if (-dist / eps > c && v > r.alpha_minus + eta) ++bad;
  }
  return static_cast<double>(bad) / static_cast<double>(u.values.size());
}

}  // namespace

ConvergenceReport propagation_sweep(const PropagationConfig& cfg) {
  const ReactionSpec& r = cfg.model.reaction();
  for (std::size_t k = 1; k < cfg.eps.size(); ++k)
    if (!(cfg.eps[k] < cfg.eps[k - 1])) throw Error(ErrorCode::ConfigError, "eps values must be strictly decreasing");
  if (cfg.eps.empty()) throw Error(ErrorCode::ConfigError, "eps list is empty");

  std::vector<double> times;
  for (double t : cfg.checkpoints)
    if (t > 0.0 && t < cfg.t_end) times.push_back(t);
  times.push_back(cfg.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  // Front-tracking reference at every checkpoint (independent of eps).
  const MobilityTable mobility = tabulate_mobility(cfg.model, cfg.mobility_angles);
  const FrontCurve start = shape_curve(cfg.shape);
  std::vector<FrontCurve> fronts;
  {
    FrontCurve c = start;
    double t = 0.0;
    FrontOptions opts;
    opts.extinction_area = 1e-4;
    for (double stop : times) {
      try {
        c = evolve_front(c, mobility, stop - t, cfg.front_dt, opts);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Extinction) throw;
        throw Error(ErrorCode::ExtinctionBeforeEnd, e.what());
      }
      t = stop;
      fronts.push_back(c);
    }
  }

  ConvergenceReport rep;
  rep.eta_p = cfg.eta_p;
  std::vector<std::vector<std::pair<ScalarField, ScalarField>>> kept;  // (u, d) per row and checkpoint
  for (double eps : cfg.eps) {
    const ModelSpec spec = cfg.model.with_epsilon(eps);
    PropagationRow row;
    row.epsilon = eps;
    row.n = grid_for_epsilon(eps, cfg.grid_min);
    const Grid grid(row.n);
    const ScalarField u0 = tanh_ansatz(spec, start, grid);
    const std::vector<ScalarField> snaps = simulate(u0, spec, cfg.t_end, times);
    std::vector<std::pair<ScalarField, ScalarField>> fields;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const FrontCurve contour = extract_level_set(snaps[k], r.alpha_mid);
      const ScalarField d = signed_distance(fronts[k], grid);
      PropagationCheckpoint cp;
      cp.t = times[k];
      cp.distance = hausdorff(contour, fronts[k]);
      cp.band_c = band_constant(snaps[k], d, r, eps, cfg.eta_p);
      row.band_c = std::max(row.band_c, cp.band_c);
      row.checkpoints.push_back(cp);
      fields.emplace_back(snaps[k], d);
    }
    row.distance = row.checkpoints.back().distance;
    rep.c_p = std::max(rep.c_p, row.band_c);
    rep.rows.push_back(std::move(row));
    kept.push_back(std::move(fields));
  }
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    auto& row = rep.rows[k];
    for (const auto& [u, d] : kept[k])
      row.violation_fraction =
          std::max(row.violation_fraction, violation_fraction(u, d, r, row.epsilon, rep.c_p, cfg.eta_p));
  }

  rep.monotone = true;
  for (std::size_t k = 1; k < rep.rows.size(); ++k)
    if (!(rep.rows[k].distance < rep.rows[k - 1].distance)) rep.monotone = false;
  const bool band_ok = rep.c_p <= cfg.cp_ceiling;
  if (rep.rows.size() >= 3) {
    std::vector<double> x, y;
    for (const auto& row : rep.rows) {
      x.push_back(row.epsilon);
      y.push_back(row.distance);
    }
    const auto [p, c] = fit_power_law(x, y);
    rep.order = p;
    rep.order_constant = c;
    rep.passed = rep.monotone && p >= rep.min_order && band_ok;
  } else {
    rep.passed = band_ok;
  }
  return rep;
}

}  // namespace anisoac

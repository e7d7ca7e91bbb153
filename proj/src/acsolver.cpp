#include "anisoac/acsolver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace anisoac {

Grid::Grid(int n_cells) : n(n_cells), h(1.0 / n_cells) {
  if (n_cells < 4 || (n_cells & (n_cells - 1)) != 0) {
    std::ostringstream msg;
    msg << "grid size " << n_cells << " is not a power of two >= 4";
    throw Error(ErrorCode::ConfigError, msg.str());
  }
}

double ScalarField::min() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max() const { return *std::max_element(values.begin(), values.end()); }

double ScalarField::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.h * grid.h;
}

ScalarField sample_field(const Grid& grid, const std::function<double(double, double)>& g) {
  ScalarField u(grid);
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) u(i, j) = g(i * grid.h, j * grid.h);
  return u;
}

double reaction_lipschitz(const ModelSpec& spec) {
  const auto& r = spec.reaction();
  const double lo = r.alpha_minus - r.eta0();
  const double hi = r.alpha_plus + r.eta0();
  const Polynomial& fp = r.f_prime;
  double best = std::max(std::abs(fp(lo)), std::abs(fp(hi)));
  for (double c : fp.derivative().real_roots(lo, hi)) best = std::max(best, std::abs(fp(c)));
  return best;
}

double stability_dt(const ModelSpec& spec, const Grid& grid) {
  const double diffusive = grid.h * grid.h / (4.0 * spec.dim() * spec.c_upper());
  const double eps = spec.epsilon();
  const double reactive = 0.2 * eps * eps / reaction_lipschitz(spec);
  return std::min(diffusive, reactive);
}

ScalarField step(const ScalarField& field, const ModelSpec& spec, double dt, StepOptions options) {
  const double limit = stability_dt(spec, field.grid);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the explicit limit " << limit;
    throw Error(ErrorCode::CFLViolated, msg.str());
  }
  if (spec.dim() != 2) throw Error(ErrorCode::ConfigError, "the field solver is two-dimensional");

  const Grid& g = field.grid;
  const int n = g.n;
  const double inv_h2 = 1.0 / (g.h * g.h);
  const double inv_4h2 = 0.25 * inv_h2;
  const auto& d = spec.diffusivity();
  const Polynomial& d11 = d.entry(0, 0);
  const Polynomial& d22 = d.entry(1, 1);
  const Polynomial& d12 = d.entry(0, 1);
  const bool cross = !d12.is_zero();
  const Polynomial& f = spec.reaction().f;
  const double eps = spec.epsilon();
  const double rscale = options.reaction ? 1.0 / (eps * eps) : 0.0;
  const auto& u = field.values;
  const auto at = [&](int i, int j) { return static_cast<std::size_t>(j) * n + i; };

  // fx(i,j): flux across the face between (i,j) and (i+1,j), times h. Same for fy.
  std::vector<double> fx(u.size()), fy(u.size());
  std::vector<double> qx, qy;
  if (cross) {
    qx.resize(u.size());
    qy.resize(u.size());
  }
  for (int j = 0; j < n; ++j) {
    const int jp = j + 1 == n ? 0 : j + 1;
    const int jm = j == 0 ? n - 1 : j - 1;
    for (int i = 0; i < n; ++i) {
      const int ip = i + 1 == n ? 0 : i + 1;
      const int im = i == 0 ? n - 1 : i - 1;
      const double c = u[at(i, j)];
      const double e = u[at(ip, j)];
      const double nn = u[at(i, jp)];
      fx[at(i, j)] = d11(0.5 * (c + e)) * (e - c);
      fy[at(i, j)] = d22(0.5 * (c + nn)) * (nn - c);
      if (cross) {
        const double k = d12(c);
        qx[at(i, j)] = k * (u[at(i, jp)] - u[at(i, jm)]);  // D_12 u_y, feeds d/dx
        qy[at(i, j)] = k * (u[at(ip, j)] - u[at(im, j)]);  // D_21 u_x, feeds d/dy
      }
    }
  }

  ScalarField out(g);
  out.t = field.t + dt;
  auto& v = out.values;
  for (int j = 0; j < n; ++j) {
    const int jp = j + 1 == n ? 0 : j + 1;
    const int jm = j == 0 ? n - 1 : j - 1;
    for (int i = 0; i < n; ++i) {
      const int ip = i + 1 == n ? 0 : i + 1;
      const int im = i == 0 ? n - 1 : i - 1;
      const std::size_t k = at(i, j);
      double div = (fx[k] - fx[at(im, j)] + fy[k] - fy[at(i, jm)]) * inv_h2;
      if (cross) div += (qx[at(ip, j)] - qx[at(im, j)] + qy[at(i, jp)] - qy[at(i, jm)]) * inv_4h2;
      const double next = u[k] + dt * (div + rscale * f(u[k]));
      if (!std::isfinite(next)) {
        std::ostringstream msg;
        msg << "non-finite value at cell (" << i << ", " << j << "), t = " << out.t;
        throw Error(ErrorCode::Blowup, msg.str());
      }
      v[k] = next;
    }
  }
  return out;
}

std::vector<ScalarField> simulate(const ScalarField& u0, const ModelSpec& spec, double t_end,
                                  std::span<const double> snapshot_times, const StepObserver& observer,
                                  StepOptions options) {
  if (!(t_end >= u0.t)) throw Error(ErrorCode::ConfigError, "t_end precedes the initial time");
  for (double v : u0.values)
    if (!std::isfinite(v)) throw Error(ErrorCode::Blowup, "initial data is not finite");

  std::vector<ScalarField> out;
  if (t_end == u0.t) {
    out.push_back(u0);
    return out;
  }
  std::vector<double> stops;
  for (double s : snapshot_times)
    if (s > u0.t && s < t_end) stops.push_back(s);
  stops.push_back(t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const double dt = stability_dt(spec, u0.grid);
  ScalarField u = u0;
  for (double stop : stops) {
    while (u.t < stop) {
      const double remaining = stop - u.t;
      u = step(u, spec, std::min(dt, remaining), options);
      if (remaining <= dt) u.t = stop;
      if (observer) observer(u);
    }
    out.push_back(u);
  }
  return out;
}

std::vector<FrontCurve> extract_level_sets(const ScalarField& field, double level) {
  const Grid& g = field.grid;
  const int n = g.n;
  const double h = g.h;
  const auto plus = [&](int i, int j) { return field(i, j) > level; };

  // Edge ids: horizontal edge (i,j)-(i+1,j) is 2k, vertical (i,j)-(i,j+1) is 2k+1, k = j n + i.
  const auto hid = [&](int i, int j) { return 2L * static_cast<long>(g.index(i, j)); };
  const auto vid = [&](int i, int j) { return 2L * static_cast<long>(g.index(i, j)) + 1; };
  const auto edge_point = [&](long id) -> Point {
    const long k = id / 2;
    const int i = static_cast<int>(k % n);
    const int j = static_cast<int>(k / n);
    const double ua = field(i, j);
    const double ub = id % 2 == 0 ? field(i + 1, j) : field(i, j + 1);
    const double theta = (level - ua) / (ub - ua);
    return id % 2 == 0 ? Point{(i + theta) * h, j * h} : Point{i * h, (j + theta) * h};
  };

  std::map<long, long> next;  // entering edge -> exiting edge
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool c[4] = {plus(i, j), plus(i + 1, j), plus(i + 1, j + 1), plus(i, j + 1)};
      const long e[4] = {hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};
      // Edge m joins corner m to corner m+1 going counter-clockwise.
      int crossings = 0;
      for (int m = 0; m < 4; ++m) crossings += c[m] != c[(m + 1) % 4];
      if (crossings == 0) continue;
      if (crossings == 2) {
        long in = -1, outgoing = -1;
        for (int m = 0; m < 4; ++m) {
          if (!c[m] && c[(m + 1) % 4]) in = e[m];
          if (c[m] && !c[(m + 1) % 4]) outgoing = e[m];
        }
        next[in] = outgoing;
        continue;
      }
      // Saddle: the cell mean decides which diagonal is connected.
      const double mean = 0.25 * (field(i, j) + field(i + 1, j) + field(i + 1, j + 1) + field(i, j + 1));
      const bool centre_plus = mean > level;
      for (int m = 0; m < 4; ++m) {
        if (centre_plus && !c[m]) next[e[m]] = e[(m + 3) % 4];
        if (!centre_plus && c[m]) next[e[(m + 3) % 4]] = e[m];
      }
    }
  }
  if (next.empty()) {
    std::ostringstream msg;
    msg << "the field does not cross level " << level;
    throw Error(ErrorCode::NoContour, msg.str());
  }

  std::vector<FrontCurve> curves;
  std::map<long, bool> used;
  for (const auto& [start, unused] : next) {
    if (used[start]) continue;
    FrontCurve curve;
    long id = start;
    Point prev = edge_point(id);
    curve.vertices.push_back(prev);
    used[id] = true;
    for (;;) {
      const auto it = next.find(id);
      if (it == next.end()) throw Error(ErrorCode::OpenContour, "contour chain ends inside the domain");
      id = it->second;
      Point p = edge_point(id);
      p.x() -= std::round(p.x() - prev.x());
      p.y() -= std::round(p.y() - prev.y());
      if (id == start) {
        const Point shift = p - curve.vertices.front();
        curve.wraps = shift.norm() > 0.5;
        break;
      }
      if (used[id]) throw Error(ErrorCode::OpenContour, "contour chain revisits an edge");
      used[id] = true;
      curve.vertices.push_back(p);
      prev = p;
    }
    curve.closed = !curve.wraps;
    curves.push_back(std::move(curve));
  }
  return curves;
}

FrontCurve extract_level_set(const ScalarField& field, double level) {
  std::vector<FrontCurve> curves = extract_level_sets(field, level);
  const FrontCurve* best = nullptr;
  for (const auto& c : curves)
    if (!c.wraps && (!best || c.size() > best->size())) best = &c;
  if (!best)
    for (const auto& c : curves)
      if (!best || c.size() > best->size()) best = &c;
  return *best;
}

OrderingReport ordering_check(const ScalarField& u_low, const ScalarField& u_high, const ModelSpec& spec,
                              double t_end, double tol) {
  OrderingReport rep;
  const auto violation = [](const ScalarField& a, const ScalarField& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) worst = std::max(worst, a.values[k] - b.values[k]);
    return worst;
  };
  rep.max_violation = violation(u_low, u_high);
  const double dt = stability_dt(spec, u_low.grid);
  ScalarField lo = u_low;
  ScalarField hi = u_high;
  while (lo.t < t_end * (1.0 - 1e-12)) {
    const double h = std::min(dt, t_end - lo.t);
    lo = step(lo, spec, h);
    hi = step(hi, spec, h);
    ++rep.steps;
    rep.max_violation = std::max(rep.max_violation, violation(lo, hi));
  }
  rep.ordered = rep.max_violation <= tol;
  return rep;
}

}  // namespace anisoac

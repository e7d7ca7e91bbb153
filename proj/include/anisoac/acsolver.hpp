#pragma once

#include <functional>
#include <span>
#include <vector>

#include "anisoac/curve.hpp"
#include "anisoac/model.hpp"

namespace anisoac {

/// Periodic n x n lattice on [0,1)^2. Node (i, j) sits at (i h, j h).
struct Grid {
  int n = 0;
  double h = 0.0;

  Grid() = default;
  explicit Grid(int n_cells);

  std::size_t cells() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }
  int wrap(int i) const { return ((i % n) + n) % n; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(wrap(j)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(wrap(i));
  }
  Point node(int i, int j) const { return {i * h, j * h}; }
};

struct ScalarField {
  Grid grid;
  std::vector<double> values;  // row-major, values[j * n + i]
  double t = 0.0;

  ScalarField() = default;
  ScalarField(const Grid& g, double fill = 0.0) : grid(g), values(g.cells(), fill) {}

  double& operator()(int i, int j) { return values[grid.index(i, j)]; }
  double operator()(int i, int j) const { return values[grid.index(i, j)]; }
  double min() const;
  double max() const;
  /// sum u h^2
  double mass() const;
};

/// Samples g(x, y) at every node.
ScalarField sample_field(const Grid& grid, const std::function<double(double, double)>& g);

/// min( h^2 / (4 N c_upper), 0.2 eps^2 / F' ), F' = max |f'| on
/// [alpha_- - eta0, alpha_+ + eta0].
double stability_dt(const ModelSpec& spec, const Grid& grid);

/// max |f'| over [alpha_- - eta0, alpha_+ + eta0].
double reaction_lipschitz(const ModelSpec& spec);

struct StepOptions {
  bool reaction = true;  // false drops the eps^-2 f term (mass conservation checks)
};

/// One explicit Euler step of
///   u_t = div(D(u) grad u) + eps^-2 f(u)
/// Diagonal fluxes live on faces with D at the mean of the two neighbours;
/// the cross terms are centred differences of the cell-centred fluxes
/// D_12(u) u_y and D_21(u) u_x, so every term telescopes over the torus.
ScalarField step(const ScalarField& field, const ModelSpec& spec, double dt, StepOptions options = {});

/// Called after every accepted step.
using StepObserver = std::function<void(const ScalarField&)>;

/// Steps with dt = stability_dt from u0.t up to the absolute time t_end,
/// shortening steps to land on each snapshot time exactly. Returns the fields
/// at the snapshot times inside (u0.t, t_end) followed by t_end;
/// t_end = u0.t returns {u0}.
std::vector<ScalarField> simulate(const ScalarField& u0, const ModelSpec& spec, double t_end,
                                  std::span<const double> snapshot_times = {}, const StepObserver& observer = {},
                                  StepOptions options = {});

/// Marching squares on the periodic grid with linear interpolation on edges
/// and the cell-mean rule for saddles. Every component is returned, oriented
/// with u < level on the left. Throws NoContour when the level is not crossed.
std::vector<FrontCurve> extract_level_sets(const ScalarField& field, double level);

/// The longest closed, non-wrapping component (falls back to the longest).
FrontCurve extract_level_set(const ScalarField& field, double level);

struct OrderingReport {
  bool ordered = false;
  double max_violation = 0.0;  // max over time and cells of u_low - u_high (0 if never positive)
  int steps = 0;
};

/// Runs both data with a common time step and tracks max(u_low - u_high).
OrderingReport ordering_check(const ScalarField& u_low, const ScalarField& u_high, const ModelSpec& spec,
                              double t_end, double tol = 1e-8);

}  // namespace anisoac

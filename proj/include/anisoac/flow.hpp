#pragma once

#include "anisoac/acsolver.hpp"
#include "anisoac/curve.hpp"
#include "anisoac/mobility.hpp"

namespace anisoac {

/// Fills normals and curvature from periodic cubic splines x(s), y(s) on the
/// chord-length parameter. Requires a closed curve with >= 8 vertices.
FrontCurve geometry(FrontCurve curve);

/// Polygon with n vertices on a circle, counter-clockwise (low phase inside).
FrontCurve circle_curve(const Point& centre, double radius, int n);

/// Resamples to n vertices equally spaced in the spline parameter.
FrontCurve redistribute(const FrontCurve& curve, int n);

struct FrontOptions {
  /// Extinction is declared once the enclosed area drops below this.
  double extinction_area = 0.0;
  /// Fraction of the explicit limit (min spacing)^2 / max tau^T mu tau used per substep.
  double safety = 0.1;
};

/// Advances the front by dt under V_n = -kappa tau^T mu(n) tau. The step is
/// split into substeps below the explicit curvature-flow limit; every substep
/// moves vertices along n and redistributes them uniformly.
/// Throws SelfIntersection, Extinction, NotElliptic (tau^T mu tau <= 0).
FrontCurve step_front(const FrontCurve& curve, const MobilityTable& mobility, double dt, FrontOptions options = {});

/// Repeated step_front up to t_end with outer step dt.
FrontCurve evolve_front(FrontCurve curve, const MobilityTable& mobility, double t_end, double dt,
                        FrontOptions options = {});

/// True when two non-adjacent segments intersect.
bool self_intersects(const FrontCurve& curve);

/// Signed distance to a closed curve on the grid, negative on the left of the
/// curve (the low phase). Exact point-to-segment distance within `band` of the
/// curve, fast sweeping for the rest.
ScalarField signed_distance(const FrontCurve& curve, const Grid& grid, double band = 0.0);

struct LevelSetOptions {
  int reinit_every = 25;
  int reinit_iterations = 20;
  double band = 6.0;  // in cells; GradientDegeneracy is only raised inside it
  /// Evolve by sum_ij mu_ij d_ij instead of (tau^T mu tau)(tau^T D^2 d tau).
  bool full_contraction = false;
};

/// Explicit step of  d_t = sum_ij mu_ij(n) d_ij,  n = grad d / |grad d|, with
/// centred differences. By default only the tangential part
/// (tau^T mu tau)(tau^T D^2 d tau) is applied; the two agree on distance
/// functions, and the tangential form does not speed up the zero set when
/// |grad d| drifts below 1 between reinitializations.
/// Cells with |grad d| < 0.5 are left unchanged.
ScalarField step_level_set(const ScalarField& d, const MobilityTable& mobility, double dt,
                           const LevelSetOptions& options = {});

/// h^2 / (4 max eigenvalue of mu) over the table.
double level_set_dt(const MobilityTable& mobility, const Grid& grid);

/// Russo-Smereka relaxation of d toward |grad d| = 1 with the subcell fix at
/// cells adjacent to the zero set.
ScalarField reinitialize(const ScalarField& d, int iterations);

/// Runs step_level_set to t_end, reinitializing every options.reinit_every steps.
ScalarField evolve_level_set(ScalarField d, const MobilityTable& mobility, double t_end,
                             const LevelSetOptions& options = {});

/// Symmetric Hausdorff distance with the torus metric, vertex to segment.
double hausdorff(const FrontCurve& a, const FrontCurve& b);

/// Distance from p to the curve (torus metric).
double distance_to_curve(const Point& p, const FrontCurve& curve);

}  // namespace anisoac

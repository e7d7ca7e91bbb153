#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anisoac/acsolver.hpp"
#include "anisoac/flow.hpp"
#include "anisoac/model.hpp"

namespace anisoac {

struct ReactionOdeState {
  double y = 0.0;
  double y_xi = 1.0;
  double y_xixi = 0.0;
};

/// RK4 for Y_tau = f(Y), Y(0) = xi, jointly with the first and second
/// variational equations for Y_xi and Y_xixi. Blowup if |Y| exceeds 1e6.
ReactionOdeState solve_reaction_ode(const ReactionSpec& reaction, double xi, double tau, double dtau = 1e-3);

/// t^eps = nu^-1 eps^2 |ln eps|.
double generation_time(const ReactionSpec& reaction, double epsilon);

struct GenerationLemmaReport {
  double c_slope = 0.0;      // max Y_xi e^{-nu tau}
  double c_curvature = 0.0;  // max |Y_xixi / Y_xi| / (e^{nu tau} - 1), tau > 0
  double c_threshold = 0.0;  // smallest C for the two threshold statements, over the eps list
  double c_y = 0.0;          // max of the three
  bool bounds_hold = false;  // alpha_- - eta <= Y(nu^-1 |ln eps|, xi) <= alpha_+ + eta on the grid
  bool slope_positive = false;
  bool passed = false;
};

struct GenerationLemmaSamples {
  double tau_max = 5.0;
  int n_tau = 51;
  double xi_min = -1.5;
  double xi_max = 1.5;
  int n_xi = 61;
  double eta = 0.1;
  std::vector<double> eps = {0.04, 0.02, 0.01};
};

/// Fits the constants of the generation lemma on a (tau, xi) sample grid.
/// eta must lie in (0, eta0).
GenerationLemmaReport check_generation_lemma(const ReactionSpec& reaction, const GenerationLemmaSamples& samples);

/// Initial data for the generation experiment.
struct InitialSpec {
  std::string kind = "cos";  // cos | constant | trig
  double amplitude = 0.5;    // cos: A cos(2 pi k x) cos(2 pi k y); constant: the value
  int mode = 1;
  int terms = 4;  // trig: random smooth trigonometric polynomial with this many modes
  unsigned seed = 1;
};

ScalarField initial_field(const InitialSpec& spec, const Grid& grid);

/// Closed initial interface.
struct ShapeSpec {
  std::string kind = "circle";  // circle | ellipse
  Point centre{0.5, 0.5};
  double radius = 0.25;  // circle
  double a = 0.3, b = 0.2;  // ellipse semi-axes
  int markers = 256;
};

FrontCurve shape_curve(const ShapeSpec& shape);

/// Parses "circle:R=0.25", "circle:R=0.2,cx=0.5,cy=0.5", "ellipse:a=0.3,b=0.2".
ShapeSpec parse_shape(const std::string& text);

/// u0(x) = U0(d(x) / eps; n(x)) from the signed distance to the curve and
/// the standing-wave family; n is the normalized distance gradient.
ScalarField tanh_ansatz(const ModelSpec& spec, const FrontCurve& curve, const Grid& grid, int profile_angles = 32);

/// Smallest power of two n with 1/n <= eps / 4, and at least `minimum`.
int grid_for_epsilon(double epsilon, int minimum = 0);

struct GenerationRow {
  double epsilon = 0.0;
  int n = 0;
  double t_eps = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  bool bounds_ok = false;
  double m0 = 0.0;  // smallest M making the two threshold statements hold
  bool m0_ok = false;
};

struct GenerationReport {
  std::vector<GenerationRow> rows;
  double eta_g = 0.1;
  double m0_ceiling = 10.0;
  bool passed = false;
};

struct GenerationConfig {
  ModelSpec model;
  std::vector<double> eps;
  int grid_min = 0;
  InitialSpec initial;
  double eta_g = 0.1;
  double m0_ceiling = 10.0;
};

/// For each eps: simulate to t^eps, check the global bounds, fit M0.
/// Throws CeilingExceeded only when `strict` is set; otherwise the row fails.
GenerationReport generation_experiment(const GenerationConfig& cfg, bool strict = false);

/// Smallest M such that u >= alpha_+ - eta wherever u0 >= alpha + M eps, and
/// u <= alpha_- + eta wherever u0 <= alpha - M eps (0 if no cell fails).
double fit_m0(const ScalarField& u0, const ScalarField& u, const ReactionSpec& reaction, double epsilon, double eta);

struct PropagationCheckpoint {
  double t = 0.0;
  double distance = 0.0;  // Hausdorff(alpha-contour, front)
  double band_c = 0.0;    // smallest C with eta-closeness outside the eps C band
};

struct PropagationRow {
  double epsilon = 0.0;
  int n = 0;
  std::vector<PropagationCheckpoint> checkpoints;
  double distance = 0.0;  // at t_end
  double band_c = 0.0;    // max over checkpoints
  double violation_fraction = 0.0;  // cells outside eps C_p violating closeness, after fitting C_p
};

struct ConvergenceReport {
  std::vector<PropagationRow> rows;
  std::optional<double> order;  // fitted p in dist ~ C eps^p (>= 3 rows)
  std::optional<double> order_constant;
  double c_p = 0.0;
  bool monotone = false;
  bool passed = false;
  double eta_p = 0.1;
  double min_order = 0.8;
};

struct PropagationConfig {
  ModelSpec model;
  std::vector<double> eps;
  int grid_min = 0;
  ShapeSpec shape;
  double t_end = 0.01;
  std::vector<double> checkpoints;  // t_end is always included
  double eta_p = 0.1;
  double cp_ceiling = 10.0;
  double front_dt = 1e-5;
  int mobility_angles = 256;
};

ConvergenceReport propagation_sweep(const PropagationConfig& cfg);

/// Least-squares slope and constant of log y against log x.
std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace anisoac

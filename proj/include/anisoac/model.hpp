#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "anisoac/error.hpp"
#include "anisoac/polynomial.hpp"

namespace anisoac {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Bistable reaction f with roots alpha_minus < alpha_mid < alpha_plus.
struct ReactionSpec {
  std::string kind;
  Polynomial f;
  Polynomial f_prime;
  double alpha_minus = -1.0;
  double alpha_mid = 0.0;
  double alpha_plus = 1.0;
  double nu = 1.0;  // f'(alpha_mid)

  /// min(alpha_plus - alpha_mid, alpha_mid - alpha_minus)
  double eta0() const;

  /// f(u) = u - u^3, roots -1, 0, 1.
  static ReactionSpec cubic();
  /// f(u) = -scale (u - am)(u - a)(u - ap).
  static ReactionSpec shifted_cubic(double am, double a, double ap, double scale = 1.0);
  /// Arbitrary polynomial; the three roots are located numerically in [-10, 10].
  /// Throws NonBistable unless exactly three simple real roots are found.
  static ReactionSpec polynomial(std::vector<double> coeffs);
};

/// Symmetric N x N diffusivity whose entries are polynomials in s.
struct DiffusivitySpec {
  std::string kind;
  int dim = 2;
  std::vector<Polynomial> entries;  // row-major, dim * dim

  const Polynomial& entry(int i, int j) const { return entries[static_cast<std::size_t>(i * dim + j)]; }
  Mat at(double s) const;
  Mat derivative_at(double s) const;

  static DiffusivitySpec identity(int dim = 2);
  static DiffusivitySpec diag(const std::vector<double>& values);
  /// R(angle) diag(values) R(angle)^T, two dimensions only.
  static DiffusivitySpec rotation_conjugated_diag(double angle, const std::vector<double>& values);
  /// phi'(s) I with phi' given by ascending coefficients.
  static DiffusivitySpec scalar_polynomial(int dim, std::vector<double> coeffs);
  /// Entry (i, j) is the polynomial with ascending coefficients coeffs[i][j].
  static DiffusivitySpec polynomial(const std::vector<std::vector<std::vector<double>>>& coeffs);
};

/// Reaction, diffusivity and the interface width epsilon. The ellipticity
/// bounds c_lower / c_upper are the extreme eigenvalues of D(s) over
/// s in [alpha_minus - 1, alpha_plus + 1], computed at construction.
class ModelSpec {
 public:
  ModelSpec(ReactionSpec reaction, DiffusivitySpec diffusivity, double epsilon);

  const ReactionSpec& reaction() const { return reaction_; }
  const DiffusivitySpec& diffusivity() const { return diffusivity_; }
  double epsilon() const { return epsilon_; }
  int dim() const { return diffusivity_.dim; }
  double c_lower() const { return c_lower_; }
  double c_upper() const { return c_upper_; }

  ModelSpec with_epsilon(double epsilon) const;

 private:
  ReactionSpec reaction_;
  DiffusivitySpec diffusivity_;
  double epsilon_;
  double c_lower_ = 0.0;
  double c_upper_ = 0.0;
};

struct ValidationReport {
  std::vector<double> roots;           // alpha_minus, alpha_mid, alpha_plus
  std::vector<double> root_residuals;  // |f| at each root
  double f_prime_minus = 0.0;
  double nu = 0.0;
  double f_prime_plus = 0.0;
  bool bistable = false;

  bool symmetric = false;
  double sampled_min_form = 0.0;  // min over sampled s and eta of eta^T D eta
  double c_lower = 0.0;
  double c_upper = 0.0;
  bool elliptic = false;

  Mat equipotential_residual;  // |int D_ij f ds|
  double equipotential_max = 0.0;
  bool equipotential = false;

  bool passed = false;
  std::optional<ErrorCode> failure;
  std::string message;

  /// Throws the first failing condition as an Error.
  void throw_if_failed() const;
};

ValidationReport validate_model(const ModelSpec& spec, int n_samples = 1024, double tol = 1e-10);

/// How derivatives with respect to the direction e are taken.
///  Intrinsic: along the unit sphere (ambient gradient projected by I - e e^T).
///  Ambient: componentwise derivative of the quadratic extension e^T D e.
/// Both give the same tangential contractions; the mobility uses Intrinsic.
enum class GradientConvention { Intrinsic, Ambient };

/// The scalar functions of s that a fixed direction e induces: a_e, A_e, W_e
/// and their e-gradients. W_e and its gradient are integrated from whichever
/// root is closer so that values near the double roots keep relative accuracy.
class DirectionalWell {
 public:
  DirectionalWell(const ModelSpec& spec, const Vec& e);

  const ModelSpec& spec() const { return *spec_; }
  const Vec& direction() const { return e_; }

  double a(double s) const { return a_poly_(s); }
  double a_prime(double s) const { return a_prime_poly_(s); }
  double big_a(double s) const;
  double w(double s) const;
  /// W_e at alpha_plus before balancing (zero for equipotential models).
  double w_end() const { return w_end_raw_; }

  Vec grad_a(double s, GradientConvention conv = GradientConvention::Ambient) const;
  Vec grad_w(double s, GradientConvention conv = GradientConvention::Ambient) const;

 private:
  Vec project(const Vec& v, GradientConvention conv) const;

  const ModelSpec* spec_;
  Vec e_;
  Polynomial a_poly_;
  Polynomial a_prime_poly_;
  std::vector<Polynomial> grad_a_poly_;  // 2 (D e)_i
  // Antiderivatives of a_e f and 2 (D e)_i f in t = s - alpha_-  (lo) and
  // t = s - alpha_+  (hi), vanishing at t = 0; accurate near the double roots.
  Polynomial a_f_lo_, a_f_hi_;
  std::vector<Polynomial> grad_f_lo_, grad_f_hi_;
  Polynomial a_anti_;
  double w_end_raw_ = 0.0;
  double w_end_ = 0.0;
  Vec grad_w_end_;
};

// Pointwise forms of the DirectionalWell members.
double a_e(const ModelSpec& spec, const Vec& e, double s);
double big_a_e(const ModelSpec& spec, const Vec& e, double s);
double w_e(const ModelSpec& spec, const Vec& e, double s);
Vec grad_e_a(const ModelSpec& spec, const Vec& e, double s);
Vec grad_e_w(const ModelSpec& spec, const Vec& e, double s);

/// Throws NotUnit when | |e| - 1 | > 1e-9.
void require_unit(const Vec& e);

/// Unit vector at angle theta in the plane.
Vec unit_vector(double theta);

}  // namespace anisoac

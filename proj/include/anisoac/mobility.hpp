#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "anisoac/model.hpp"
#include "anisoac/periodic_spline.hpp"

namespace anisoac {

struct MobilityValue {
  double lambda = 0.0;
  Mat mu1;
  Mat mu2;
  Mat mu;  // mu1 + mu2
};

/// lambda(e) = int_{alpha_-}^{alpha_+} sqrt(W_e(s)) ds
double lambda_e(const ModelSpec& spec, const Vec& e);

/// lambda mu1_ij = int D_ij sqrt(W_e) ds
/// lambda mu2_ij = -1/2 int d_i W_e * d_j (a_e / sqrt(W_e)) ds
/// with d_j(a/sqrt W) expanded as d_j a / sqrt W - a d_j W / (2 W^{3/2}) and the
/// e-derivatives taken analytically under `conv`. The mu2 integrand vanishes
/// linearly at both roots; SingularEndpoint is raised if it grows there instead.
MobilityValue mu_tensor(const ModelSpec& spec, const Vec& e,
                        GradientConvention conv = GradientConvention::Intrinsic);

/// eta^T (lambda mu) eta for a unit eta orthogonal to e.
double tangential_form(const ModelSpec& spec, const Vec& e, const Vec& eta);

/// int lambda_min(D(s)) sqrt(W_e(s)) ds, the lower bound the tangential form
/// satisfies for every unit tangent eta.
double tangential_lower_bound(const ModelSpec& spec, const Vec& e);

/// Two-dimensional mobility sampled at theta_k = 2 pi k / M with periodic cubic
/// interpolation of lambda and the four entries of mu.
class MobilityTable {
 public:
  struct Sample {
    double lambda;
    Eigen::Matrix2d mu;
  };

  MobilityTable() = default;
  MobilityTable(std::vector<double> lambda, std::vector<Eigen::Matrix2d> mu);
  /// Direction-independent mobility (tests and reference runs).
  static MobilityTable constant(const Eigen::Matrix2d& mu, double lambda = 1.0);

  Sample at_angle(double theta) const;
  Sample at(const Eigen::Vector2d& e) const;
  /// tau^T mu(n) tau with n = (cos theta, sin theta), tau = (-sin theta, cos theta),
  /// interpolated from the sampled tangential values.
  double tangential(double theta) const;
  /// Largest eigenvalue of the symmetric part of mu over a 4x refined angle set.
  double max_eigenvalue() const { return max_eigenvalue_; }

  std::size_t size() const { return lambda_.size(); }
  double angle(std::size_t k) const;
  double lambda_sample(std::size_t k) const { return lambda_[k]; }
  const Eigen::Matrix2d& mu_sample(std::size_t k) const { return mu_[k]; }

 private:
  std::vector<double> lambda_;
  std::vector<Eigen::Matrix2d> mu_;
  PeriodicSpline lambda_spline_;
  std::array<PeriodicSpline, 4> mu_spline_;
  PeriodicSpline tangential_spline_;
  double max_eigenvalue_ = 0.0;
  bool constant_ = false;
};

MobilityTable tabulate_mobility(const ModelSpec& spec, int m_angles);

}  // namespace anisoac

#pragma once

#include <span>
#include <vector>

#include "anisoac/model.hpp"

namespace anisoac {

/// Standing wave U0(z; e) tabulated on the symmetric grid z_k = (k - K) h_z,
/// k = 0..2K, with U0(0) = alpha_mid.
struct WaveProfile {
  Vec e;
  double z_max = 0.0;
  double h_z = 0.0;
  std::vector<double> z;
  std::vector<double> u0;
  std::vector<double> u0z;
  std::vector<double> a;    // a_e(U0)
  std::vector<double> phi;  // A_e(U0)_z = a_e(U0) U0_z = sqrt(W_e(U0))
  double alpha_minus = 0.0;
  double alpha_mid = 0.0;
  double alpha_plus = 0.0;
  double decay_rate = 0.0;  // fitted exponential tail rate (smaller of the two tails)
  double decay_r2 = 0.0;    // worse R^2 of the two log-linear tail fits

  std::size_t size() const { return z.size(); }
  std::size_t center() const { return z.size() / 2; }
  /// Cubic Hermite interpolation of U0 (clamped to the end values outside the grid).
  double value(double zz) const;
  double slope(double zz) const;
};

WaveProfile solve_standing_wave(const ModelSpec& spec, const Vec& e, double z_max = 12.0, double h_z = 1e-3);

/// U0_zz from the profile equation: -(f(U0) + a'(U0) U0_z^2) / a(U0).
std::vector<double> profile_second_derivative(const ModelSpec& spec, const WaveProfile& profile);

/// G(z) = (D_ij(U0) U0_z)_z, the flux-derivative right-hand side.
std::vector<double> rhs_flux_derivative(const ModelSpec& spec, const WaveProfile& profile, int i, int j);

/// Trapezoidal value of the solvability integral  int G(z) A_e(U0)_z dz.
double solvability_residual(const WaveProfile& profile, std::span<const double> g);

inline constexpr double kSolvabilityTol = 1e-6;

/// Bounded solution psi of (a_e(U0) psi)_zz + f'(U0) psi = G with psi(0) = 0,
/// via the reduction-of-order formula
///   psi = U0_z int_0^z phi^-2 ( int_-inf^xi G phi ) dxi,   phi = A_e(U0)_z.
/// The inner integral is taken from the left for z <= 0 and as
/// -int_xi^inf G phi for z > 0 (equal when the solvability integral vanishes),
/// which keeps it from amplifying the residual in the right tail.
std::vector<double> solve_linearized(const WaveProfile& profile, std::span<const double> g);

/// max |(a psi)_zz + f'(U0) psi - G| over interior grid points at least
/// `margin` (in z units) from the ends, by central differences.
double linearized_equation_residual(const ModelSpec& spec, const WaveProfile& profile, std::span<const double> psi,
                                    std::span<const double> g, double margin = 0.0);

/// Derivative of U0 with respect to e_j,
///   -U0_{e_j}(z) = U0_z(z) int_0^z [ d_j a / a - d_j W / (2 W) ](U0) dzeta,
/// which is the closed form with s = U0(zeta) substituted; the logarithmic
/// singularities at the roots disappear in the z variable.
std::vector<double> direction_derivative_profile(const ModelSpec& spec, const WaveProfile& profile, int j,
                                                 GradientConvention conv = GradientConvention::Intrinsic);

/// Standing waves on M equispaced directions in the plane, interpolated
/// linearly in angle. Models with direction-independent a_e store one profile.
class ProfileFamily {
 public:
  ProfileFamily(const ModelSpec& spec, int m_angles = 32, double z_max = 12.0, double h_z = 1e-3);
  double value(double z, double theta) const;
  const WaveProfile& at(std::size_t k) const { return profiles_[k]; }
  std::size_t size() const { return profiles_.size(); }

 private:
  std::vector<WaveProfile> profiles_;
};

}  // namespace anisoac

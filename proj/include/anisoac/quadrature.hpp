#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>
#include <utility>

#include "anisoac/error.hpp"

namespace anisoac {

inline constexpr double kQuadratureAbsTol = 1e-10;

/// Adaptive 15-point Gauss-Kronrod on [a, b]. The integrand is never evaluated
/// at the endpoints, which matters for integrands built from W_e near its
/// double roots. Throws QuadratureFailure when the error estimate exceeds
/// abs_tol (and the relative floor 1e-12 |f|_1).
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = kQuadratureAbsTol) {
  if (a == b) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0;
  double l1 = 0.0;
  double value = GK::integrate(f, a, b, 0, 1e-12, &error, &l1);
  // Integrands that vanish up to round-off never meet the relative test.
  if (std::isfinite(value) && l1 < 1e-3 * abs_tol) return value;
  value = GK::integrate(std::forward<F>(f), a, b, 15, 1e-12, &error, &l1);
  if (!std::isfinite(value) || error > std::max(abs_tol, 1e-12 * l1)) {
    std::ostringstream msg;
    msg << "integral over [" << a << ", " << b << "] reached error " << error << " > " << abs_tol;
    throw Error(ErrorCode::QuadratureFailure, msg.str());
  }
  return value;
}

}  // namespace anisoac

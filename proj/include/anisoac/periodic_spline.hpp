#pragma once

#include <span>
#include <vector>

namespace anisoac {

/// Interpolating cubic spline with periodic end conditions on knots
/// t_0 < t_1 < ... < t_{n-1}, period L > t_{n-1} - t_0. Knots may be
/// non-uniform (curve chord-length parameterizations use that).
class PeriodicSpline {
 public:
  PeriodicSpline() = default;
  PeriodicSpline(std::span<const double> knots, std::span<const double> values, double period);
  /// Uniform knots t_k = k * period / n.
  static PeriodicSpline uniform(std::span<const double> values, double period);

  double value(double t) const;
  double first_derivative(double t) const;
  double second_derivative(double t) const;

  double period() const { return period_; }
  std::size_t size() const { return y_.size(); }

 private:
  struct Local {
    std::size_t i;
    double a, b, h;
  };
  Local locate(double t) const;

  std::vector<double> t_, y_, m_;
  double period_ = 0.0;
  bool uniform_ = false;
};

/// Solves a cyclic tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]   (indices mod n)
/// by the Sherman-Morrison correction of the Thomas algorithm. n >= 3.
std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::span<const double> rhs);

/// Plain (non-cyclic) tridiagonal solve; lower[0] and upper[n-1] ignored.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace anisoac

#pragma once

#include <initializer_list>
#include <vector>

namespace anisoac {

/// Real polynomial with coefficients in ascending powers: c0 + c1 s + c2 s^2 + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// (s - r0)(s - r1)...
  static Polynomial from_roots(const std::vector<double>& roots);

  double operator()(double s) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Polynomial derivative() const;
  /// Antiderivative vanishing at s = 0.
  Polynomial antiderivative() const;
  /// q(t) = p(t + c).
  Polynomial shifted(double c) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double k) const;

  /// Simple real roots in [lo, hi], ascending. Located by sign changes on a
  /// fine scan and polished by bisection; double roots without a sign change
  /// are not reported.
  std::vector<double> real_roots(double lo, double hi, int scan_points = 4096) const;

 private:
  void trim();
  std::vector<double> coeffs_{0.0};
};

}  // namespace anisoac

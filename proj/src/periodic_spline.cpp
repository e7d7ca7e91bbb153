#include "anisoac/periodic_spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anisoac {

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), x(n);
  double denom = diag[0];
  c[0] = n > 1 ? upper[0] / denom : 0.0;
  x[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n < 3) throw std::invalid_argument("cyclic tridiagonal system needs n >= 3");
  const double top_right = lower[0];
  const double bottom_left = upper[n - 1];
  const double gamma = -diag[0];

  std::vector<double> bb(diag.begin(), diag.end());
  bb[0] -= gamma;
  bb[n - 1] -= bottom_left * top_right / gamma;

  std::vector<double> x = solve_tridiagonal(lower, bb, upper, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = bottom_left;
  const std::vector<double> z = solve_tridiagonal(lower, bb, upper, u);
  const double fact = (x[0] + top_right * x[n - 1] / gamma) / (1.0 + z[0] + top_right * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

PeriodicSpline::PeriodicSpline(std::span<const double> knots, std::span<const double> values, double period)
    : t_(knots.begin(), knots.end()), y_(values.begin(), values.end()), period_(period) {
  const std::size_t n = y_.size();
  if (n < 3 || t_.size() != n) throw std::invalid_argument("periodic spline needs >= 3 matching knots");
  if (!(period_ > t_.back() - t_.front())) throw std::invalid_argument("period must exceed the knot span");

  auto h = [&](std::size_t i) { return i + 1 < n ? t_[i + 1] - t_[i] : t_[0] + period_ - t_[n - 1]; };
  std::vector<double> lower(n), diag(n), upper(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + 1) % n;
    const std::size_t im = (i + n - 1) % n;
    const double hm = h(im);
    const double hp = h(i);
    if (!(hm > 0.0 && hp > 0.0)) throw std::invalid_argument("spline knots must be strictly increasing");
    lower[i] = hm;
    diag[i] = 2.0 * (hm + hp);
    upper[i] = hp;
    rhs[i] = 6.0 * ((y_[ip] - y_[i]) / hp - (y_[i] - y_[im]) / hm);
  }
  m_ = solve_cyclic_tridiagonal(lower, diag, upper, rhs);

  const double h0 = period_ / static_cast<double>(n);
  uniform_ = true;
  for (std::size_t i = 0; i < n && uniform_; ++i)
    uniform_ = std::abs(t_[i] - t_[0] - static_cast<double>(i) * h0) <= 1e-14 * period_;
}

PeriodicSpline PeriodicSpline::uniform(std::span<const double> values, double period) {
  std::vector<double> knots(values.size());
  for (std::size_t i = 0; i < knots.size(); ++i)
    knots[i] = period * static_cast<double>(i) / static_cast<double>(values.size());
  return PeriodicSpline(knots, values, period);
}

PeriodicSpline::Local PeriodicSpline::locate(double t) const {
  const std::size_t n = y_.size();
  double r = std::fmod(t - t_[0], period_);
  if (r < 0.0) r += period_;
  const double tt = t_[0] + r;
  std::size_t i;
  if (uniform_) {
    i = std::min(static_cast<std::size_t>(r / (period_ / static_cast<double>(n))), n - 1);
  } else {
    const auto it = std::upper_bound(t_.begin(), t_.end(), tt);
    i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - t_.begin()) - 1));
  }
  const double left = t_[i];
  const double right = i + 1 < n ? t_[i + 1] : t_[0] + period_;
  const double h = right - left;
  const double b = (tt - left) / h;
  return {i, 1.0 - b, b, h};
}

double PeriodicSpline::value(double t) const {
  const auto [i, a, b, h] = locate(t);
  const std::size_t j = (i + 1) % y_.size();
  return a * y_[i] + b * y_[j] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[j]) * h * h / 6.0;
}

double PeriodicSpline::first_derivative(double t) const {
  const auto [i, a, b, h] = locate(t);
  const std::size_t j = (i + 1) % y_.size();
  return (y_[j] - y_[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[i] + (3.0 * b * b - 1.0) / 6.0 * h * m_[j];
}

double PeriodicSpline::second_derivative(double t) const {
  const auto [i, a, b, h] = locate(t);
  const std::size_t j = (i + 1) % y_.size();
  return a * m_[i] + b * m_[j];
}

}  // namespace anisoac

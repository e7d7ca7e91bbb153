#include "anisoac/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace anisoac {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

Polynomial Polynomial::from_roots(const std::vector<double>& roots) {
  Polynomial p({1.0});
  for (double r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

bool Polynomial::is_zero() const {
  return coeffs_.size() == 1 && coeffs_[0] == 0.0;
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::shifted(double c) const {
  const Polynomial x({c, 1.0});
  Polynomial q = constant(coeffs_.back());
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) q = q * x + constant(coeffs_[k]);
  return q;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> r(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) r[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) r[k] += other.coeffs_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> r(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double k) const {
  std::vector<double> r = coeffs_;
  for (double& c : r) c *= k;
  return Polynomial(std::move(r));
}

std::vector<double> Polynomial::real_roots(double lo, double hi, int scan_points) const {
  std::vector<double> roots;
  if (is_zero() || degree() == 0) return roots;
  const double step = (hi - lo) / scan_points;
  double x0 = lo;
  double f0 = (*this)(x0);
  for (int k = 1; k <= scan_points; ++k) {
    const double x1 = lo + k * step;
    const double f1 = (*this)(x1);
    if (f0 == 0.0) {
      if (roots.empty() || std::abs(roots.back() - x0) > 0.5 * step) roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = (*this)(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0 && (roots.empty() || std::abs(roots.back() - x0) > 0.5 * step)) roots.push_back(x0);
  return roots;
}

}  // namespace anisoac

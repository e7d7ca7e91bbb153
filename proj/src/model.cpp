#include "anisoac/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "anisoac/quadrature.hpp"

namespace anisoac {

namespace {

// W_e(alpha_plus) and grad W_e(alpha_plus) below this are treated as the
// exact zero the equipotential condition implies.
constexpr double kBalanceTol = 1e-12;

double min_eigenvalue(const DiffusivitySpec& d, double s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(d.at(s), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const DiffusivitySpec& d, double s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(d.at(s), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// Golden-section refinement of a sampled extremum of g on [lo, hi].
template <class G>
double refine_min(G&& g, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 80; ++it) {
    if (g1 < g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - r * (b - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + r * (b - a);
      g2 = g(x2);
    }
  }
  return std::min({g1, g2, g(lo), g(hi)});
}

template <class G>
double sampled_min(G&& g, double lo, double hi, int n) {
  int best = 0;
  double best_val = g(lo);
  for (int k = 1; k < n; ++k) {
    const double v = g(lo + (hi - lo) * k / (n - 1));
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double step = (hi - lo) / (n - 1);
  const double a = std::max(lo, lo + (best - 1) * step);
  const double b = std::min(hi, lo + (best + 1) * step);
  return std::min(best_val, refine_min(g, a, b));
}

}  // namespace

double ReactionSpec::eta0() const {
  return std::min(alpha_plus - alpha_mid, alpha_mid - alpha_minus);
}

ReactionSpec ReactionSpec::cubic() {
  ReactionSpec r;
  r.kind = "cubic";
  r.f = Polynomial({0.0, 1.0, 0.0, -1.0});
  r.f_prime = r.f.derivative();
  r.alpha_minus = -1.0;
  r.alpha_mid = 0.0;
  r.alpha_plus = 1.0;
  r.nu = r.f_prime(0.0);
  return r;
}

ReactionSpec ReactionSpec::shifted_cubic(double am, double a, double ap, double scale) {
  if (!(am < a && a < ap) || !(scale > 0.0))
    throw Error(ErrorCode::NonBistable, "shifted-cubic needs ordered roots and a positive scale");
  ReactionSpec r;
  r.kind = "shifted-cubic";
  r.f = Polynomial::from_roots({am, a, ap}) * -scale;
  r.f_prime = r.f.derivative();
  r.alpha_minus = am;
  r.alpha_mid = a;
  r.alpha_plus = ap;
  r.nu = r.f_prime(a);
  return r;
}

ReactionSpec ReactionSpec::polynomial(std::vector<double> coeffs) {
  ReactionSpec r;
  r.kind = "polynomial";
  r.f = Polynomial(std::move(coeffs));
  r.f_prime = r.f.derivative();
  const auto roots = r.f.real_roots(-10.0, 10.0, 200000);
  if (roots.size() != 3) {
    std::ostringstream msg;
    msg << "expected three simple real roots in [-10, 10], found " << roots.size();
    throw Error(ErrorCode::NonBistable, msg.str());
  }
  r.alpha_minus = roots[0];
  r.alpha_mid = roots[1];
  r.alpha_plus = roots[2];
  r.nu = r.f_prime(r.alpha_mid);
  return r;
}

Mat DiffusivitySpec::at(double s) const {
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = entry(i, j)(s);
  return m;
}

Mat DiffusivitySpec::derivative_at(double s) const {
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = entry(i, j).derivative()(s);
  return m;
}

DiffusivitySpec DiffusivitySpec::identity(int dim) {
  std::vector<double> ones(static_cast<std::size_t>(dim), 1.0);
  auto d = diag(ones);
  d.kind = "identity";
  return d;
}

DiffusivitySpec DiffusivitySpec::diag(const std::vector<double>& values) {
  if (values.size() < 2) throw Error(ErrorCode::ConfigError, "diffusivity dimension must be >= 2");
  DiffusivitySpec d;
  d.kind = "diag";
  d.dim = static_cast<int>(values.size());
  d.entries.assign(values.size() * values.size(), Polynomial::constant(0.0));
  for (std::size_t i = 0; i < values.size(); ++i) d.entries[i * values.size() + i] = Polynomial::constant(values[i]);
  return d;
}

DiffusivitySpec DiffusivitySpec::rotation_conjugated_diag(double angle, const std::vector<double>& values) {
  if (values.size() != 2) throw Error(ErrorCode::ConfigError, "rotation-conjugated-diag is two-dimensional");
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix2d rot;
  rot << c, -s, s, c;
  const Eigen::Matrix2d m = rot * Eigen::Vector2d(values[0], values[1]).asDiagonal() * rot.transpose();
  DiffusivitySpec d;
  d.kind = "rotation-conjugated-diag";
  d.dim = 2;
  const double off = 0.5 * (m(0, 1) + m(1, 0));
  d.entries = {Polynomial::constant(m(0, 0)), Polynomial::constant(off), Polynomial::constant(off),
               Polynomial::constant(m(1, 1))};
  return d;
}

DiffusivitySpec DiffusivitySpec::scalar_polynomial(int dim, std::vector<double> coeffs) {
  if (dim < 2) throw Error(ErrorCode::ConfigError, "diffusivity dimension must be >= 2");
  DiffusivitySpec d;
  d.kind = "scalar-polynomial";
  d.dim = dim;
  d.entries.assign(static_cast<std::size_t>(dim * dim), Polynomial::constant(0.0));
  const Polynomial p(std::move(coeffs));
  for (int i = 0; i < dim; ++i) d.entries[static_cast<std::size_t>(i * dim + i)] = p;
  return d;
}

DiffusivitySpec DiffusivitySpec::polynomial(const std::vector<std::vector<std::vector<double>>>& coeffs) {
  const auto n = coeffs.size();
  if (n < 2) throw Error(ErrorCode::ConfigError, "diffusivity dimension must be >= 2");
  DiffusivitySpec d;
  d.kind = "polynomial";
  d.dim = static_cast<int>(n);
  for (const auto& row : coeffs) {
    if (row.size() != n) throw Error(ErrorCode::ConfigError, "diffusivity entries must form a square matrix");
    for (const auto& c : row) d.entries.emplace_back(c);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.entries[i * n + j].coeffs() != d.entries[j * n + i].coeffs())
        throw Error(ErrorCode::ConfigError, "diffusivity must be symmetric");
  return d;
}

ModelSpec::ModelSpec(ReactionSpec reaction, DiffusivitySpec diffusivity, double epsilon)
    : reaction_(std::move(reaction)), diffusivity_(std::move(diffusivity)), epsilon_(epsilon) {
  if (!(epsilon_ > 0.0)) throw Error(ErrorCode::ConfigError, "epsilon must be positive");
  const double lo = reaction_.alpha_minus - 1.0;
  const double hi = reaction_.alpha_plus + 1.0;
  c_lower_ = sampled_min([&](double s) { return min_eigenvalue(diffusivity_, s); }, lo, hi, 1024);
  c_upper_ = -sampled_min([&](double s) { return -max_eigenvalue(diffusivity_, s); }, lo, hi, 1024);
}

ModelSpec ModelSpec::with_epsilon(double epsilon) const {
  ModelSpec copy = *this;
  if (!(epsilon > 0.0)) throw Error(ErrorCode::ConfigError, "epsilon must be positive");
  copy.epsilon_ = epsilon;
  return copy;
}

void ValidationReport::throw_if_failed() const {
  if (failure) throw Error(*failure, message);
}

ValidationReport validate_model(const ModelSpec& spec, int n_samples, double tol) {
  ValidationReport rep;
  const auto& r = spec.reaction();
  const auto& d = spec.diffusivity();
  const int n = d.dim;

  rep.roots = {r.alpha_minus, r.alpha_mid, r.alpha_plus};
  for (double a : rep.roots) rep.root_residuals.push_back(std::abs(r.f(a)));
  rep.f_prime_minus = r.f_prime(r.alpha_minus);
  rep.nu = r.f_prime(r.alpha_mid);
  rep.f_prime_plus = r.f_prime(r.alpha_plus);
  const bool roots_ok = std::all_of(rep.root_residuals.begin(), rep.root_residuals.end(),
                                    [&](double v) { return v <= tol; });
  rep.bistable = roots_ok && r.alpha_minus < r.alpha_mid && r.alpha_mid < r.alpha_plus && rep.f_prime_minus < 0.0 &&
                 rep.nu > 0.0 && rep.f_prime_plus < 0.0;

  // Ellipticity: s on a uniform grid over [alpha_minus - 1, alpha_plus + 1],
  // eta on 256 seeded random unit vectors plus the coordinate axes.
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  std::vector<Vec> etas;
  for (int k = 0; k < n; ++k) etas.push_back(Vec::Unit(n, k));
  while (etas.size() < 256 + static_cast<std::size_t>(n)) {
    Vec eta(n);
    for (int i = 0; i < n; ++i) eta(i) = normal(rng);
    if (eta.norm() > 1e-8) etas.push_back(eta.normalized());
  }
  rep.symmetric = true;
  rep.sampled_min_form = std::numeric_limits<double>::infinity();
  const double lo = r.alpha_minus - 1.0, hi = r.alpha_plus + 1.0;
  for (int k = 0; k < n_samples; ++k) {
    const double s = lo + (hi - lo) * k / (n_samples - 1);
    const Mat m = d.at(s);
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 0.0) rep.symmetric = false;
    for (const auto& eta : etas) rep.sampled_min_form = std::min(rep.sampled_min_form, eta.dot(m * eta));
  }
  rep.c_lower = spec.c_lower();
  rep.c_upper = spec.c_upper();
  rep.elliptic = rep.symmetric && rep.sampled_min_form > 0.0 && rep.c_lower > 0.0;

  rep.equipotential_residual = Mat::Zero(n, n);
  if (r.alpha_minus < r.alpha_plus) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Polynomial& dij = d.entry(i, j);
        rep.equipotential_residual(i, j) =
            std::abs(integrate([&](double s) { return dij(s) * r.f(s); }, r.alpha_minus, r.alpha_plus));
      }
  }
  rep.equipotential_max = rep.equipotential_residual.maxCoeff();
  rep.equipotential = rep.equipotential_max <= tol;

  std::ostringstream msg;
  if (!rep.bistable) {
    rep.failure = ErrorCode::NonBistable;
    msg << "roots (" << rep.roots[0] << ", " << rep.roots[1] << ", " << rep.roots[2] << ") with f' = ("
        << rep.f_prime_minus << ", " << rep.nu << ", " << rep.f_prime_plus << ")";
  } else if (!rep.elliptic) {
    rep.failure = ErrorCode::NotElliptic;
    msg << "sampled min eta^T D eta = " << rep.sampled_min_form << (rep.symmetric ? "" : " (D not symmetric)");
  } else if (!rep.equipotential) {
    rep.failure = ErrorCode::EquipotentialViolated;
    msg << "max |int D_ij f ds| = " << rep.equipotential_max << " > " << tol;
  }
  rep.message = msg.str();
  rep.passed = !rep.failure.has_value();
  return rep;
}

void require_unit(const Vec& e) {
  if (std::abs(e.norm() - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "|e| = " << e.norm();
    throw Error(ErrorCode::NotUnit, msg.str());
  }
}

Vec unit_vector(double theta) {
  Vec e(2);
  e << std::cos(theta), std::sin(theta);
  return e;
}

DirectionalWell::DirectionalWell(const ModelSpec& spec, const Vec& e) : spec_(&spec), e_(e) {
  require_unit(e);
  const auto& d = spec.diffusivity();
  const int n = d.dim;
  if (e.size() != n) throw Error(ErrorCode::NotUnit, "direction has the wrong dimension");
  a_poly_ = Polynomial::constant(0.0);
  for (int i = 0; i < n; ++i) {
    Polynomial gi = Polynomial::constant(0.0);
    for (int j = 0; j < n; ++j) {
      a_poly_ = a_poly_ + d.entry(i, j) * (e(i) * e(j));
      gi = gi + d.entry(i, j) * (2.0 * e(j));
    }
    grad_a_poly_.push_back(gi);
  }
  a_prime_poly_ = a_poly_.derivative();

  a_anti_ = a_poly_.antiderivative();

  const auto& r = spec.reaction();
  const double am = r.alpha_minus;
  const double ap = r.alpha_plus;
  a_f_lo_ = (a_poly_ * r.f).shifted(am).antiderivative();
  a_f_hi_ = (a_poly_ * r.f).shifted(ap).antiderivative();
  w_end_raw_ = -2.0 * a_f_lo_(ap - am);
  w_end_ = std::abs(w_end_raw_) <= kBalanceTol ? 0.0 : w_end_raw_;
  grad_w_end_ = Vec(n);
  for (int i = 0; i < n; ++i) {
    const Polynomial gf = grad_a_poly_[static_cast<std::size_t>(i)] * r.f;
    grad_f_lo_.push_back(gf.shifted(am).antiderivative());
    grad_f_hi_.push_back(gf.shifted(ap).antiderivative());
    const double v = -2.0 * grad_f_lo_.back()(ap - am);
    grad_w_end_(i) = std::abs(v) <= kBalanceTol ? 0.0 : v;
  }
}

double DirectionalWell::big_a(double s) const {
  return a_anti_(s) - a_anti_(spec_->reaction().alpha_minus);
}

double DirectionalWell::w(double s) const {
  const auto& r = spec_->reaction();
  double value;
  if (s <= r.alpha_mid)
    value = -2.0 * a_f_lo_(s - r.alpha_minus);
  else
    value = w_end_ - 2.0 * a_f_hi_(s - r.alpha_plus);
  if (value < 0.0) {
    if (s > r.alpha_minus && s < r.alpha_plus && value < -kQuadratureAbsTol) {
      std::ostringstream msg;
      msg << "W_e(" << s << ") = " << value;
      throw Error(ErrorCode::NegativeW, msg.str());
    }
    value = 0.0;
  }
  return value;
}

Vec DirectionalWell::project(const Vec& v, GradientConvention conv) const {
  if (conv == GradientConvention::Ambient) return v;
  return v - e_ * e_.dot(v);
}

Vec DirectionalWell::grad_a(double s, GradientConvention conv) const {
  Vec g(e_.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = grad_a_poly_[static_cast<std::size_t>(i)](s);
  return project(g, conv);
}

Vec DirectionalWell::grad_w(double s, GradientConvention conv) const {
  const auto& r = spec_->reaction();
  Vec g(e_.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (s <= r.alpha_mid)
      g(i) = -2.0 * grad_f_lo_[k](s - r.alpha_minus);
    else
      g(i) = grad_w_end_(i) - 2.0 * grad_f_hi_[k](s - r.alpha_plus);
  }
  return project(g, conv);
}

double a_e(const ModelSpec& spec, const Vec& e, double s) {
  return DirectionalWell(spec, e).a(s);
}

double big_a_e(const ModelSpec& spec, const Vec& e, double s) {
  return DirectionalWell(spec, e).big_a(s);
}

double w_e(const ModelSpec& spec, const Vec& e, double s) {
  return DirectionalWell(spec, e).w(s);
}

Vec grad_e_a(const ModelSpec& spec, const Vec& e, double s) {
  return DirectionalWell(spec, e).grad_a(s);
}

Vec grad_e_w(const ModelSpec& spec, const Vec& e, double s) {
  return DirectionalWell(spec, e).grad_w(s);
}

}  // namespace anisoac

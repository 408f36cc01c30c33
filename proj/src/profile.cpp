#include "ssmhd/profile.hpp"

#include <algorithm>
#include <cmath>

namespace ssmhd {

// -- CubicSpline ------------------------------------------------------------

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) throw DomainError("CubicSpline: need >= 4 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw DomainError("CubicSpline: abscissae must increase");

  // Moment equations for the interior knots; not-a-knot closes the system by
  // making the third derivative continuous across the first and last interior
  // knots. Those rows are eliminated up front so a Thomas solve suffices.
  std::vector<double> hseg(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) hseg[i] = x_[i + 1] - x_[i];

  const std::size_t m = n - 2;  // unknowns M_1 .. M_{n-2}
  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t k = i - 1;
    sub[k] = hseg[i - 1];
    diag[k] = 2.0 * (hseg[i - 1] + hseg[i]);
    sup[k] = hseg[i];
    rhs[k] = 6.0 * ((y_[i + 1] - y_[i]) / hseg[i] - (y_[i] - y_[i - 1]) / hseg[i - 1]);
  }
  // M_0 = ((h0+h1) M_1 - h0 M_2) / h1
  diag[0] += sub[0] * (hseg[0] + hseg[1]) / hseg[1];
  sup[0] -= sub[0] * hseg[0] / hseg[1];
  // M_{n-1} = ((h_{n-2}+h_{n-3}) M_{n-2} - h_{n-2} M_{n-3}) / h_{n-3}
  diag[m - 1] += sup[m - 1] * (hseg[n - 2] + hseg[n - 3]) / hseg[n - 3];
  sub[m - 1] -= sup[m - 1] * hseg[n - 2] / hseg[n - 3];

  for (std::size_t k = 1; k < m; ++k) {
    const double w = sub[k] / diag[k - 1];
    diag[k] -= w * sup[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  std::vector<double> sol(m);
  sol[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) sol[k] = (rhs[k] - sup[k] * sol[k + 1]) / diag[k];

  m_.assign(n, 0.0);
  for (std::size_t k = 0; k < m; ++k) m_[k + 1] = sol[k];
  m_[0] = ((hseg[0] + hseg[1]) * m_[1] - hseg[0] * m_[2]) / hseg[1];
  m_[n - 1] = ((hseg[n - 2] + hseg[n - 3]) * m_[n - 2] - hseg[n - 2] * m_[n - 3]) / hseg[n - 3];
}

std::size_t CubicSpline::interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double CubicSpline::value(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double CubicSpline::deriv2(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

// -- AngularFn ----------------------------------------------------------------

AngularFn AngularFn::zero() {
  return constant(0.0);
}

AngularFn AngularFn::constant(double c) {
  AngularFn fn;
  fn.value = [c](double) { return c; };
  fn.d1 = [](double) { return 0.0; };
  fn.d2 = [](double) { return 0.0; };
  return fn;
}

AngularFn AngularFn::analytic(std::function<double(double)> v, std::function<double(double)> d1,
                              std::function<double(double)> d2) {
  AngularFn fn;
  fn.value = std::move(v);
  fn.d1 = std::move(d1);
  fn.d2 = std::move(d2);
  return fn;
}

AngularFn AngularFn::spline(const std::vector<double>& phi, const std::vector<double>& y) {
  auto sp = std::make_shared<CubicSpline>(phi, y);
  AngularFn fn;
  fn.value = [sp](double p) { return sp->value(p); };
  fn.d1 = [sp](double p) { return sp->deriv(p); };
  fn.d2 = [sp](double p) { return sp->deriv2(p); };
  return fn;
}

// -- Profile --------------------------------------------------------------

Profile Profile::zero(double phi_min, double phi_max) {
  Profile pr;
  pr.f = AngularFn::zero();
  pr.g = AngularFn::zero();
  pr.h = AngularFn::zero();
  pr.B = AngularFn::zero();
  pr.P = AngularFn::zero();
  pr.phi_min = phi_min;
  pr.phi_max = phi_max;
  return pr;
}

Profile Profile::from_samples(const std::vector<double>& phi, const std::vector<double>& f,
                              const std::vector<double>& g, const std::vector<double>& h,
                              const std::vector<double>& B, const std::vector<double>& P) {
  Profile pr;
  pr.f = AngularFn::spline(phi, f);
  pr.g = AngularFn::spline(phi, g);
  pr.h = AngularFn::spline(phi, h);
  pr.B = AngularFn::spline(phi, B);
  pr.P = AngularFn::spline(phi, P);
  pr.phi_min = phi.front();
  pr.phi_max = phi.back();
  return pr;
}

}  // namespace ssmhd

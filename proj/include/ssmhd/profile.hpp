#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ssmhd/geometry.hpp"

namespace ssmhd {

/// Natural cubic spline interpolant with not-a-knot end conditions.
/// Reproduces cubic polynomials exactly; second derivatives converge at O(h^2).
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

/// One angular profile function with first- and second-derivative access.
struct AngularFn {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;

  double operator()(double phi) const { return value ? value(phi) : 0.0; }
  double deriv(double phi) const { return d1 ? d1(phi) : 0.0; }
  double deriv2(double phi) const { return d2 ? d2(phi) : 0.0; }

  /// Identically zero function.
  static AngularFn zero();
  static AngularFn constant(double c);
  static AngularFn analytic(std::function<double(double)> v, std::function<double(double)> d1,
                            std::function<double(double)> d2);
  /// Spline through (phi_i, y_i) samples; derivatives come from the spline.
  static AngularFn spline(const std::vector<double>& phi, const std::vector<double>& y);
};

/// The quintuple of angular profile functions of a self-similar axisymmetric
/// field: u = (f/rho) e_rho + (g/rho) e_phi + (h/rho) e_theta,
/// B = (B/rho) e_theta, p = P/rho^2, each defined on [phi_min, phi_max].
struct Profile {
  AngularFn f, g, h, B, P;
  double phi_min = 0.0;
  double phi_max = kPi;

  bool contains(double phi, double slack = 1e-12) const {
    return phi >= phi_min - slack && phi <= phi_max + slack;
  }
  bool interior(double phi) const { return phi > phi_min && phi < phi_max; }

  static Profile zero(double phi_min = 0.0, double phi_max = kPi);

  /// Spline-backed profile through common sample angles.
  static Profile from_samples(const std::vector<double>& phi, const std::vector<double>& f,
                              const std::vector<double>& g, const std::vector<double>& h,
                              const std::vector<double>& B, const std::vector<double>& P);
};

}  // namespace ssmhd

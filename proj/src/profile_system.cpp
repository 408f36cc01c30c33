#include "ssmhd/profile_system.hpp"

#include <algorithm>
#include <cmath>

#include "ssmhd/operators.hpp"

namespace ssmhd {

double OdeResidual::max_abs() const {
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3), std::abs(r4), std::abs(r5)});
}

double BoundaryResidual::max_abs() const {
  double m = 0.0;
  for (double v : axis) m = std::max(m, std::abs(v));
  for (double v : far) m = std::max(m, std::abs(v));
  return m;
}

OdeResidual ode_residuals(const Profile& pr, DomainKind domain, double phi) {
  const double hi = domain == DomainKind::full ? kPi : 0.5 * kPi;
  if (!(phi > 0.0 && phi < hi)) throw OutOfDomain("ode_residuals: phi outside the domain interval");
  if (!pr.contains(phi)) throw OutOfDomain("ode_residuals: phi outside the profile domain");

  const double s = std::sin(phi);
  const double cot = std::cos(phi) / s;
  const double f = pr.f(phi), fp = pr.f.deriv(phi), fpp = pr.f.deriv2(phi);
  const double g = pr.g(phi), gp = pr.g.deriv(phi);
  const double h = pr.h(phi), hp = pr.h.deriv(phi), hpp = pr.h.deriv2(phi);
  const double B = pr.B(phi), Bp = pr.B.deriv(phi);
  const double P = pr.P(phi), Pp = pr.P.deriv(phi);

  OdeResidual r;
  r.r1 = fpp + fp * cot - (fp * g - (f * f + g * g + h * h) + B * B - 2.0 * P);
  r.r2 = fp - (gp * g - h * h * cot + B * B * cot + Pp);
  r.r3 = hpp + hp * cot - h / (s * s) - g * (hp + h * cot);
  r.r4 = -(g * Bp - g * B * cot - 2.0 * B * f);
  r.r5 = -(f + gp + g * cot);
  return r;
}

double endpoint_limit(const Profile& pr, const std::function<double(double)>& fn,
                      double endpoint) {
  if (pr.contains(endpoint)) return fn(endpoint);
  // One-sided Richardson extrapolation; kills the linear and quadratic terms.
  static constexpr double kOffsets[3] = {1e-3, 5e-4, 2.5e-4};
  const bool from_above = endpoint < 0.5 * (pr.phi_min + pr.phi_max);
  double v[3];
  for (int i = 0; i < 3; ++i) {
    const double phi = endpoint + (from_above ? kOffsets[i] : -kOffsets[i]);
    if (!pr.contains(phi))
      throw OutOfDomain("endpoint_limit: extrapolation offsets outside the profile domain");
    v[i] = fn(phi);
  }
  return (8.0 * v[2] - 6.0 * v[1] + v[0]) / 3.0;
}

BoundaryResidual boundary_residuals(const Profile& pr, BoundaryKind bc) {
  BoundaryResidual out;
  out.kind = bc;
  const auto fp = [&pr](double p) { return pr.f.deriv(p); };
  const auto fv = [&pr](double p) { return pr.f(p); };
  const auto gv = [&pr](double p) { return pr.g(p); };
  const auto hv = [&pr](double p) { return pr.h(p); };
  const auto hp = [&pr](double p) { return pr.h.deriv(p); };
  const auto Bv = [&pr](double p) { return pr.B(p); };

  out.axis = {endpoint_limit(pr, fp, 0.0), endpoint_limit(pr, gv, 0.0),
              endpoint_limit(pr, hv, 0.0), endpoint_limit(pr, Bv, 0.0)};
  switch (bc) {
    case BoundaryKind::full_space:
      out.far = {endpoint_limit(pr, fp, kPi), endpoint_limit(pr, gv, kPi),
                 endpoint_limit(pr, hv, kPi), endpoint_limit(pr, Bv, kPi)};
      break;
    case BoundaryKind::noslip:
      out.far = {endpoint_limit(pr, fv, 0.5 * kPi), endpoint_limit(pr, gv, 0.5 * kPi),
                 endpoint_limit(pr, hv, 0.5 * kPi)};
      break;
    case BoundaryKind::navier_slip:
      out.far = {endpoint_limit(pr, fp, 0.5 * kPi), endpoint_limit(pr, gv, 0.5 * kPi),
                 endpoint_limit(pr, hp, 0.5 * kPi)};
      break;
  }
  return out;
}

ReductionQuantities reduction_quantities(const Profile& pr, double phi) {
  if (!pr.interior(phi) || !(phi > 0.0 && phi < kPi))
    throw OutOfDomain("reduction_quantities: phi must be interior");
  const double s = std::sin(phi);
  const double cot = std::cos(phi) / s;
  ReductionQuantities q;
  const double g = pr.g(phi), B = pr.B(phi);
  q.H = pr.h.deriv(phi) + pr.h(phi) * cot;
  q.J = pr.f(phi) * s;
  q.K = g * s;
  q.Q = B * g * g * s;
  return q;
}

AngularFn pressure_recover(const AngularFn& f, const AngularFn& g, double C2) {
  return AngularFn::analytic(
      [f, g, C2](double phi) { return f(phi) - 0.5 * g(phi) * g(phi) - C2; },
      [f, g](double phi) { return f.deriv(phi) - g(phi) * g.deriv(phi); },
      [f, g](double phi) {
        const double gp = g.deriv(phi);
        return f.deriv2(phi) - gp * gp - g(phi) * g.deriv2(phi);
      });
}

Profile closed_form_chain(const LandauParam& param) {
  const double a = param.a();
  // w(t) = 2/(t-a) solves w' + w^2/2 = 0; L = (1-t^2) w; K = L(cos phi);
  // f = L'(t); g = K/sin phi, evaluated through the equivalent product form
  // g = sin(phi) w(t) which has no endpoint cancellation.
  const auto w0 = [a](double t) { return 2.0 / (t - a); };
  const auto w1 = [a](double t) { return -2.0 / ((t - a) * (t - a)); };
  const auto w2 = [a](double t) { return 4.0 / ((t - a) * (t - a) * (t - a)); };
  const auto w3 = [a](double t) { return -12.0 / ((t - a) * (t - a) * (t - a) * (t - a)); };

  Profile pr;
  pr.f = AngularFn::analytic(
      [w0, w1](double phi) {
        const double t = std::cos(phi), s2 = 1.0 - t * t;
        return -2.0 * t * w0(t) + s2 * w1(t);  // L'(t)
      },
      [w0, w1, w2](double phi) {
        const double t = std::cos(phi), s = std::sin(phi), s2 = 1.0 - t * t;
        const double L2 = -2.0 * w0(t) - 4.0 * t * w1(t) + s2 * w2(t);
        return -s * L2;
      },
      [w0, w1, w2, w3](double phi) {
        const double t = std::cos(phi), s = std::sin(phi), s2 = 1.0 - t * t;
        const double L2 = -2.0 * w0(t) - 4.0 * t * w1(t) + s2 * w2(t);
        const double L3 = -6.0 * w1(t) - 6.0 * t * w2(t) + s2 * w3(t);
        return -t * L2 + s * s * L3;
      });
  pr.g = AngularFn::analytic(
      [w0](double phi) { return std::sin(phi) * w0(std::cos(phi)); },
      [w0, w1](double phi) {
        const double t = std::cos(phi), s = std::sin(phi);
        return t * w0(t) - s * s * w1(t);
      },
      [w0, w1, w2](double phi) {
        const double t = std::cos(phi), s = std::sin(phi);
        return -s * w0(t) - 3.0 * s * t * w1(t) + s * s * s * w2(t);
      });
  pr.h = AngularFn::zero();
  pr.B = AngularFn::zero();
  pr.P = pressure_recover(pr.f, pr.g, 0.0);  // C2 = C3 = 0 in the whole space
  pr.phi_min = 0.0;
  pr.phi_max = kPi;
  return pr;
}

NavierSlipCheck navier_slip_equivalence(const Profile& pr) {
  const double half = 0.5 * kPi;
  const auto gv = [&pr](double p) { return pr.g(p); };
  const double g_wall = endpoint_limit(pr, gv, half);
  if (std::abs(g_wall) > 1e-8)
    throw GNotZero("navier_slip_equivalence: g(pi/2) != 0, normal velocity does not vanish");

  NavierSlipCheck out;
  const auto fp = [&pr](double p) { return pr.f.deriv(p); };
  const auto hp = [&pr](double p) { return pr.h.deriv(p); };
  out.profile_form = {endpoint_limit(pr, fp, half), endpoint_limit(pr, hp, half)};

  // Strain tensor route: one-sided differences into x3 > 0 for d/dx3,
  // central in-plane differences for du3/dx_k. n = -e3 on the plane.
  const CartesianField u = velocity_field(pr);
  const CartesianVec x0{1.0, 0.0, 0.0};
  const double h = 1e-6;
  const CartesianVec up0 = u(x0);
  const CartesianVec up1 = u(x0 + CartesianVec{0, 0, h});
  const CartesianVec up2 = u(x0 + CartesianVec{0, 0, 2.0 * h});
  const CartesianVec du_dx3 = (up0 * -3.0 + up1 * 4.0 - up2) * (1.0 / (2.0 * h));
  const double du3_dx1 =
      (u(x0 + CartesianVec{h, 0, 0}).x3 - u(x0 - CartesianVec{h, 0, 0}).x3) / (2.0 * h);
  const double du3_dx2 =
      (u(x0 + CartesianVec{0, h, 0}).x3 - u(x0 - CartesianVec{0, h, 0}).x3) / (2.0 * h);
  out.cartesian_stress = {-0.5 * (du_dx3.x1 + du3_dx1), -0.5 * (du_dx3.x2 + du3_dx2)};

  const double tol = 1e-8;
  out.agreement = std::abs(out.cartesian_stress[0]) < tol &&
                  std::abs(out.cartesian_stress[1]) < tol &&
                  std::abs(out.profile_form[0]) < tol && std::abs(out.profile_form[1]) < tol;
  return out;
}

}  // namespace ssmhd

#include "ssmhd/landau.hpp"

#include <cmath>

#include "ssmhd/quadrature.hpp"

namespace ssmhd {

LandauParam::LandauParam(double a) : a_(a) {
  if (!(std::abs(a) > 1.0 + 1e-12))
    throw DomainError("LandauParam: |a| must exceed 1 (got " + std::to_string(a) + ")");
}

namespace {

// Bracketed term of the beta(a) relation. The direct form loses ~a^2 ulp to
// cancellation, so large |a| switches to the series in 1/a:
//   a - a^2 atanh(1/a) + 4a/(3(a^2-1)) = sum_{k>=1} (4/3 - 1/(2k+1)) a^{-(2k-1)}.
double beta_bracket(double a) {
  if (std::abs(a) >= 10.0) {
    const double t = 1.0 / a;
    const double t2 = t * t;
    double term = t, sum = 0.0;
    for (int k = 1; k <= 12; ++k) {
      sum += (4.0 / 3.0 - 1.0 / (2.0 * k + 1.0)) * term;
      term *= t2;
    }
    return sum;
  }
  return a + 0.5 * a * a * std::log((a - 1.0) / (a + 1.0)) + 4.0 * a / (3.0 * (a * a - 1.0));
}

double beta_raw(double a) { return 16.0 * kPi * beta_bracket(a); }

}  // namespace

double beta_from_a(const LandauParam& a) { return beta_raw(a.a()); }

LandauParam a_from_beta(double beta, Branch branch) {
  if (beta == 0.0) throw DomainError("a_from_beta: beta must be nonzero");
  if (branch == Branch::negative) {
    // beta(a) is odd in a.
    if (beta > 0.0) throw DomainError("a_from_beta: negative branch needs beta < 0");
    return LandauParam(-a_from_beta(-beta, Branch::positive).a());
  }
  if (beta < 0.0) throw DomainError("a_from_beta: positive branch needs beta > 0");

  constexpr double kAMax = 1e12;
  // Bisect in s = log(a - 1); beta decreases from +inf (a -> 1+) to 0+ (a -> inf).
  double s_lo = std::log(1e-12);
  double s_hi = std::log(kAMax);
  auto eval = [beta](double s) { return beta_raw(1.0 + std::exp(s)) - beta; };
  double f_lo = eval(s_lo);
  double f_hi = eval(s_hi);
  if (f_lo < 0.0 || f_hi > 0.0) {
    // Monotonicity is an empirical property; scan for a sign change before
    // giving up.
    bool found = false;
    const int kSub = 256;
    double prev_s = s_lo, prev_f = f_lo;
    for (int i = 1; i <= kSub && !found; ++i) {
      const double s = s_lo + (s_hi - s_lo) * i / kSub;
      const double f = eval(s);
      if (prev_f == 0.0 || (prev_f > 0.0) != (f > 0.0)) {
        s_hi = s;
        f_hi = f;
        s_lo = prev_s;
        f_lo = prev_f;
        found = true;
      }
      prev_s = s;
      prev_f = f;
    }
    if (!found) throw NoBracket("a_from_beta: no sign change up to a = 1e12");
  }

  for (int iter = 0; iter < 200 && s_hi - s_lo > 1e-15; ++iter) {
    const double s_mid = 0.5 * (s_lo + s_hi);
    const double f_mid = eval(s_mid);
    if (f_mid == 0.0) {
      s_lo = s_hi = s_mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      s_lo = s_mid;
      f_lo = f_mid;
    } else {
      s_hi = s_mid;
      f_hi = f_mid;
    }
  }

  // Secant polish in a-space.
  double a0 = 1.0 + std::exp(s_lo);
  double a1 = 1.0 + std::exp(s_hi);
  double g0 = beta_raw(a0) - beta;
  double g1 = beta_raw(a1) - beta;
  for (int iter = 0; iter < 8 && a0 != a1 && g1 != g0; ++iter) {
    const double a2 = a1 - g1 * (a1 - a0) / (g1 - g0);
    if (!std::isfinite(a2) || a2 <= 1.0 + 1e-12 || a2 > 2.0 * kAMax) break;
    a0 = a1;
    g0 = g1;
    a1 = a2;
    g1 = beta_raw(a1) - beta;
    if (g1 == 0.0) break;
  }
  return LandauParam(a1);
}

LandauSample landau_field(const LandauParam& param, const SphericalPoint& at) {
  const double a = param.a();
  const double d = a - std::cos(at.phi);
  LandauSample out;
  out.velocity.v_rho = 2.0 / at.rho * ((a * a - 1.0) / (d * d) - 1.0);
  out.velocity.v_phi = 2.0 / at.rho * (-std::sin(at.phi) / d);
  out.velocity.v_theta = 0.0;
  out.pressure = 4.0 * (a * std::cos(at.phi) - 1.0) / (at.rho * at.rho * d * d);
  return out;
}

Profile landau_profiles(const LandauParam& param) {
  const double a = param.a();
  const double a2m1 = a * a - 1.0;
  Profile pr;
  pr.f = AngularFn::analytic(
      [a, a2m1](double phi) {
        const double d = a - std::cos(phi);
        return 2.0 * a2m1 / (d * d) - 2.0;
      },
      [a, a2m1](double phi) {
        const double d = a - std::cos(phi);
        return -4.0 * a2m1 * std::sin(phi) / (d * d * d);
      },
      [a, a2m1](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double d = a - c;
        return -4.0 * a2m1 * (c * d - 3.0 * s * s) / (d * d * d * d);
      });
  pr.g = AngularFn::analytic(
      [a](double phi) {
        const double d = a - std::cos(phi);
        return -2.0 * std::sin(phi) / d;
      },
      [a](double phi) {
        const double d = a - std::cos(phi);
        return -2.0 * (a * std::cos(phi) - 1.0) / (d * d);
      },
      [a](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double d = a - c;
        return 2.0 * s * (a * a + a * c - 2.0) / (d * d * d);
      });
  pr.h = AngularFn::zero();
  pr.B = AngularFn::zero();
  // P = f - g^2/2 simplifies to 4 (a cos phi - 1) / (a - cos phi)^2.
  pr.P = AngularFn::analytic(
      [a](double phi) {
        const double d = a - std::cos(phi);
        return 4.0 * (a * std::cos(phi) - 1.0) / (d * d);
      },
      [a](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double d = a - c;
        return -4.0 * s * (a * a + a * c - 2.0) / (d * d * d);
      },
      [a](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double d = a - c;
        const double n = a * a + a * c - 2.0;
        return -4.0 * (n * c - a * s * s) / (d * d * d) + 12.0 * n * s * s / (d * d * d * d);
      });
  pr.phi_min = 0.0;
  pr.phi_max = kPi;
  return pr;
}

ForceVector::ForceVector(const CartesianVec& b) : b_(b), beta_(b.norm()) {
  if (beta_ == 0.0) throw ZeroForce("ForceVector: b = 0");
}

namespace {

// Rotation taking (0,0,1) to the unit vector n.
Mat3 rotation_to(const CartesianVec& n) {
  const CartesianVec e3{0.0, 0.0, 1.0};
  const CartesianVec k = e3.cross(n);
  const double s2 = k.dot(k);
  const double c = e3.dot(n);
  Mat3 r;
  if (s2 < 1e-30) {
    if (c > 0.0) {
      for (int i = 0; i < 3; ++i) r.m[i][i] = 1.0;
    } else {
      // antiparallel: half-turn about e1
      r.m[0][0] = 1.0;
      r.m[1][1] = -1.0;
      r.m[2][2] = -1.0;
    }
    return r;
  }
  const double f = (1.0 - c) / s2;
  const double kx = k.x1, ky = k.x2, kz = k.x3;
  const double kmat[3][3] = {{0, -kz, ky}, {kz, 0, -kx}, {-ky, kx, 0}};
  double k2[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k2[i][j] = kmat[i][0] * kmat[0][j] + kmat[i][1] * kmat[1][j] + kmat[i][2] * kmat[2][j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = (i == j ? 1.0 : 0.0) + kmat[i][j] + f * k2[i][j];
  return r;
}

}  // namespace

CartesianSample rotate_to_b(const ForceVector& b, const CartesianVec& at) {
  const LandauParam a = a_from_beta(b.beta(), Branch::positive);
  const Mat3 rot = rotation_to(b.axis());
  const CartesianVec pulled = rot.transpose().apply(at);
  const SphericalPoint sp = to_spherical(pulled);
  const LandauSample axis_sample = landau_field(a, sp);
  CartesianSample out;
  out.velocity = rot.apply(to_cartesian(axis_sample.velocity, sp));
  out.pressure = axis_sample.pressure;
  return out;
}

CartesianVec force_flux(const LandauParam& a, double radius, int order) {
  if (!(radius > 0.0)) throw DomainError("force_flux: radius must be positive");
  const Profile pr = landau_profiles(a);
  const GaussLegendre rule = gauss_legendre(order);
  const int n_theta = 2 * order;
  const double dtheta = 2.0 * kPi / n_theta;

  CartesianVec flux;
  for (int i = 0; i < order; ++i) {
    const double t = rule.nodes[i];  // cos(phi)
    const double phi = std::acos(t);
    for (int j = 0; j < n_theta; ++j) {
      const SphericalPoint p{radius, j * dtheta, phi};
      const CartesianVec x = to_cartesian(p);
      const CartesianVec n = x * (1.0 / radius);
      const LandauSample s = landau_field(a, p);
      const CartesianVec u = to_cartesian(s.velocity, p);
      const Mat3 jac = velocity_jacobian(pr, x);
      const double un = u.dot(n);
      CartesianVec integrand = u * un + n * s.pressure;
      integrand.x1 -= (jac.m[0][0] + jac.m[0][0]) * n.x1 + (jac.m[0][1] + jac.m[1][0]) * n.x2 +
                      (jac.m[0][2] + jac.m[2][0]) * n.x3;
      integrand.x2 -= (jac.m[1][0] + jac.m[0][1]) * n.x1 + (jac.m[1][1] + jac.m[1][1]) * n.x2 +
                      (jac.m[1][2] + jac.m[2][1]) * n.x3;
      integrand.x3 -= (jac.m[2][0] + jac.m[0][2]) * n.x1 + (jac.m[2][1] + jac.m[1][2]) * n.x2 +
                      (jac.m[2][2] + jac.m[2][2]) * n.x3;
      // dS = r^2 dt dtheta with t = cos(phi)
      flux = flux + integrand * (rule.weights[i] * dtheta * radius * radius);
    }
  }
  return flux;
}

}  // namespace ssmhd

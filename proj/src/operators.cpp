#include "ssmhd/operators.hpp"

#include <cmath>

namespace ssmhd {

namespace {

void require_interior(const Profile& pr, double phi, const char* who) {
  if (!(phi > 0.0 && phi < kPi))
    throw AxisSingularity(std::string(who) + ": cot(phi) required on the axis");
  if (!pr.contains(phi)) throw OutOfDomain(std::string(who) + ": phi outside the profile domain");
}

void check_fd_point(const CartesianVec& at, double h, const char* who) {
  const double axis_dist = std::sqrt(at.x1 * at.x1 + at.x2 * at.x2);
  if (h >= axis_dist || h >= at.norm())
    throw StepTooLarge(std::string(who) + ": step reaches the x3-axis or the origin");
}

}  // namespace

SphericalVec laplacian_u(const Profile& pr, const SphericalPoint& at) {
  require_interior(pr, at.phi, "laplacian_u");
  const double phi = at.phi;
  const double sp = std::sin(phi);
  const double cot = std::cos(phi) / sp;
  const double f = pr.f(phi), fp = pr.f.deriv(phi), fpp = pr.f.deriv2(phi);
  const double g = pr.g(phi), gp = pr.g.deriv(phi), gpp = pr.g.deriv2(phi);
  const double h = pr.h(phi), hp = pr.h.deriv(phi), hpp = pr.h.deriv2(phi);
  const double inv_r3 = 1.0 / (at.rho * at.rho * at.rho);
  SphericalVec out;
  out.v_rho = (fpp + fp * cot - 2.0 * (f + gp + g * cot)) * inv_r3;
  out.v_phi = (2.0 * fp + gpp + gp * cot - g / (sp * sp)) * inv_r3;
  out.v_theta = (hpp + hp * cot - h / (sp * sp)) * inv_r3;
  return out;
}

double divergence_u(const Profile& pr, const SphericalPoint& at) {
  require_interior(pr, at.phi, "divergence_u");
  const double phi = at.phi;
  const double cot = std::cos(phi) / std::sin(phi);
  return (pr.f(phi) + pr.g.deriv(phi) + pr.g(phi) * cot) / (at.rho * at.rho);
}

SphericalVec convective(const Profile& pr, ConvectivePair pair, const SphericalPoint& at) {
  require_interior(pr, at.phi, "convective");
  const double phi = at.phi;
  const double cot = std::cos(phi) / std::sin(phi);
  const double f = pr.f(phi), fp = pr.f.deriv(phi);
  const double g = pr.g(phi), gp = pr.g.deriv(phi);
  const double h = pr.h(phi), hp = pr.h.deriv(phi);
  const double B = pr.B(phi), Bp = pr.B.deriv(phi);
  const double inv_r3 = 1.0 / (at.rho * at.rho * at.rho);
  SphericalVec out;
  switch (pair) {
    case ConvectivePair::uu:
      out.v_rho = (fp * g - (f * f + g * g + h * h)) * inv_r3;
      out.v_phi = (gp * g - h * h * cot) * inv_r3;
      out.v_theta = g * (hp + h * cot) * inv_r3;
      break;
    case ConvectivePair::uB:
      out.v_rho = -B * h * inv_r3;
      out.v_phi = -B * h * cot * inv_r3;
      out.v_theta = (Bp * g - B * f) * inv_r3;
      break;
    case ConvectivePair::Bu:
      out.v_rho = -B * h * inv_r3;
      out.v_phi = -B * h * cot * inv_r3;
      out.v_theta = (B * f + B * g * cot) * inv_r3;
      break;
  }
  return out;
}

SphericalVec pressure_gradient(const Profile& pr, const SphericalPoint& at) {
  if (!pr.contains(at.phi)) throw OutOfDomain("pressure_gradient: phi outside the profile domain");
  const double inv_r3 = 1.0 / (at.rho * at.rho * at.rho);
  SphericalVec out;
  out.v_rho = -2.0 * pr.P(at.phi) * inv_r3;
  out.v_phi = pr.P.deriv(at.phi) * inv_r3;
  out.v_theta = 0.0;
  return out;
}

// -- reconstruction -------------------------------------------------------

CartesianField velocity_field(const Profile& pr) {
  return [pr](const CartesianVec& x) {
    const SphericalPoint p = to_spherical(x);
    const SphericalVec v{pr.f(p.phi) / p.rho, pr.h(p.phi) / p.rho, pr.g(p.phi) / p.rho};
    return to_cartesian(v, p);
  };
}

CartesianField swirl_field(const Profile& pr) {
  return [pr](const CartesianVec& x) {
    const SphericalPoint p = to_spherical(x);
    const SphericalVec v{0.0, pr.B(p.phi) / p.rho, 0.0};
    return to_cartesian(v, p);
  };
}

ScalarField pressure_field(const Profile& pr) {
  return [pr](const CartesianVec& x) {
    const SphericalPoint p = to_spherical(x);
    return pr.P(p.phi) / (p.rho * p.rho);
  };
}

SphericalField spherical_velocity_field(const Profile& pr) {
  SphericalField field;
  field.value = [pr](const SphericalPoint& p) {
    return SphericalVec{pr.f(p.phi) / p.rho, pr.h(p.phi) / p.rho, pr.g(p.phi) / p.rho};
  };
  field.d_rho = [pr](const SphericalPoint& p) {
    const double r2 = p.rho * p.rho;
    return SphericalVec{-pr.f(p.phi) / r2, -pr.h(p.phi) / r2, -pr.g(p.phi) / r2};
  };
  field.d_theta = [](const SphericalPoint&) { return SphericalVec{}; };
  field.d_phi = [pr](const SphericalPoint& p) {
    return SphericalVec{pr.f.deriv(p.phi) / p.rho, pr.h.deriv(p.phi) / p.rho,
                        pr.g.deriv(p.phi) / p.rho};
  };
  return field;
}

Mat3 velocity_jacobian(const Profile& pr, const CartesianVec& at) {
  const SphericalPoint p = to_spherical(at);
  const SphericalField u = spherical_velocity_field(pr);
  const SphericalVec d_r = covariant_derivative(u, FrameDirection::e_rho, p);
  const SphericalVec d_t = covariant_derivative(u, FrameDirection::e_theta, p);
  const SphericalVec d_p = covariant_derivative(u, FrameDirection::e_phi, p);
  const CartesianVec cr = to_cartesian(d_r, p);
  const CartesianVec ct = to_cartesian(d_t, p);
  const CartesianVec cp = to_cartesian(d_p, p);
  const CartesianVec axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Mat3 jac;
  for (int j = 0; j < 3; ++j) {
    const SphericalVec alpha = to_frame(axes[j], p);
    const CartesianVec col =
        cr * alpha.v_rho + ct * alpha.v_theta + cp * alpha.v_phi;
    jac.m[0][j] = col.x1;
    jac.m[1][j] = col.x2;
    jac.m[2][j] = col.x3;
  }
  return jac;
}

// -- finite-difference oracle ------------------------------------------------

CartesianVec fd_laplacian(const CartesianField& F, const CartesianVec& at, double h) {
  check_fd_point(at, h, "fd_laplacian");
  const CartesianVec axes[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
  const CartesianVec center = F(at);
  CartesianVec out;
  for (const auto& e : axes) {
    const CartesianVec second = F(at + e) - center * 2.0 + F(at - e);
    out = out + second * (1.0 / (h * h));
  }
  return out;
}

double fd_divergence(const CartesianField& F, const CartesianVec& at, double h) {
  check_fd_point(at, h, "fd_divergence");
  const double inv = 1.0 / (2.0 * h);
  double div = 0.0;
  div += (F(at + CartesianVec{h, 0, 0}).x1 - F(at - CartesianVec{h, 0, 0}).x1) * inv;
  div += (F(at + CartesianVec{0, h, 0}).x2 - F(at - CartesianVec{0, h, 0}).x2) * inv;
  div += (F(at + CartesianVec{0, 0, h}).x3 - F(at - CartesianVec{0, 0, h}).x3) * inv;
  return div;
}

Mat3 fd_jacobian(const CartesianField& F, const CartesianVec& at, double h) {
  check_fd_point(at, h, "fd_jacobian");
  const CartesianVec axes[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
  Mat3 jac;
  for (int j = 0; j < 3; ++j) {
    const CartesianVec col = (F(at + axes[j]) - F(at - axes[j])) * (1.0 / (2.0 * h));
    jac.m[0][j] = col.x1;
    jac.m[1][j] = col.x2;
    jac.m[2][j] = col.x3;
  }
  return jac;
}

CartesianVec fd_convective(const CartesianField& W, const CartesianField& V,
                           const CartesianVec& at, double h) {
  return fd_jacobian(V, at, h).apply(W(at));
}

CartesianVec fd_gradient(const ScalarField& F, const CartesianVec& at, double h) {
  check_fd_point(at, h, "fd_gradient");
  const double inv = 1.0 / (2.0 * h);
  return {(F(at + CartesianVec{h, 0, 0}) - F(at - CartesianVec{h, 0, 0})) * inv,
          (F(at + CartesianVec{0, h, 0}) - F(at - CartesianVec{0, h, 0})) * inv,
          (F(at + CartesianVec{0, 0, h}) - F(at - CartesianVec{0, 0, h})) * inv};
}

}  // namespace ssmhd

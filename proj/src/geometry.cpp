#include "ssmhd/geometry.hpp"

#include <algorithm>

namespace ssmhd {

CartesianVec to_cartesian(const SphericalPoint& p) {
  const double s = std::sin(p.phi);
  return {p.rho * s * std::cos(p.theta), p.rho * s * std::sin(p.theta), p.rho * std::cos(p.phi)};
}

SphericalPoint to_spherical(const CartesianVec& v) {
  const double rho = v.norm();
  if (rho == 0.0) throw ZeroVector("to_spherical: |v| = 0, the origin has no spherical image");
  const double phi = std::acos(std::clamp(v.x3 / rho, -1.0, 1.0));
  double theta = 0.0;  // axis convention
  if (v.x1 != 0.0 || v.x2 != 0.0) {
    theta = std::atan2(v.x2, v.x1);
    if (theta < 0.0) theta += 2.0 * kPi;
  }
  return {rho, theta, phi};
}

FrameBasis basis_vectors(const SphericalPoint& p) {
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  FrameBasis b;
  b.e_rho = {sp * ct, sp * st, cp};
  b.e_theta = {-st, ct, 0.0};
  b.e_phi = b.e_theta.cross(b.e_rho);  // = (cp*ct, cp*st, -sp)
  return b;
}

CartesianVec to_cartesian(const SphericalVec& v, const SphericalPoint& at) {
  const FrameBasis b = basis_vectors(at);
  return b.e_rho * v.v_rho + b.e_theta * v.v_theta + b.e_phi * v.v_phi;
}

SphericalVec to_frame(const CartesianVec& v, const SphericalPoint& at) {
  const FrameBasis b = basis_vectors(at);
  return {v.dot(b.e_rho), v.dot(b.e_theta), v.dot(b.e_phi)};
}

namespace {

enum class Coord { rho, theta, phi };

// Central difference of the component triple along one coordinate.
SphericalVec fd_partial(const SphericalField& f, Coord c, const SphericalPoint& at) {
  SphericalPoint lo = at, hi = at;
  double h = f.fd_step;
  switch (c) {
    case Coord::rho:
      h *= std::max(1.0, at.rho);
      lo.rho -= h;
      hi.rho += h;
      break;
    case Coord::theta:
      lo.theta -= h;
      hi.theta += h;
      break;
    case Coord::phi:
      lo.phi -= h;
      hi.phi += h;
      break;
  }
  const SphericalVec a = f.value(lo), b = f.value(hi);
  return (b - a) * (1.0 / (2.0 * h));
}

SphericalVec partial(const SphericalField& f, Coord c, const SphericalPoint& at) {
  switch (c) {
    case Coord::rho:
      if (f.d_rho) return f.d_rho(at);
      break;
    case Coord::theta:
      if (f.d_theta) return f.d_theta(at);
      break;
    case Coord::phi:
      if (f.d_phi) return f.d_phi(at);
      break;
  }
  return fd_partial(f, c, at);
}

}  // namespace

SphericalVec covariant_derivative(const SphericalField& field, FrameDirection dir,
                                  const SphericalPoint& at) {
  const double rho = at.rho;
  switch (dir) {
    case FrameDirection::e_rho:
      return partial(field, Coord::rho, at);
    case FrameDirection::e_phi: {
      const SphericalVec v = field.value(at);
      const SphericalVec dphi = partial(field, Coord::phi, at);
      SphericalVec out;
      out.v_rho = (dphi.v_rho - v.v_phi) / rho;
      out.v_phi = (v.v_rho + dphi.v_phi) / rho;
      out.v_theta = dphi.v_theta / rho;
      return out;
    }
    case FrameDirection::e_theta: {
      if (!(at.phi > 0.0 && at.phi < kPi))
        throw AxisSingularity("covariant_derivative: e_theta direction needs cot(phi) on the axis");
      const double sp = std::sin(at.phi);
      const double cot = std::cos(at.phi) / sp;
      const SphericalVec v = field.value(at);
      const SphericalVec dth = partial(field, Coord::theta, at);
      SphericalVec out;
      out.v_rho = (dth.v_rho / sp - v.v_theta) / rho;
      out.v_phi = (dth.v_phi / sp - cot * v.v_theta) / rho;
      out.v_theta = (v.v_rho + cot * v.v_phi + dth.v_theta / sp) / rho;
      return out;
    }
  }
  throw Error("covariant_derivative: unreachable");
}

}  // namespace ssmhd

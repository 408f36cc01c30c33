#pragma once

#include <cmath>
#include <functional>

#include "ssmhd/errors.hpp"

namespace ssmhd {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Cartesian point or vector (x1, x2, x3).
struct CartesianVec {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  CartesianVec operator+(const CartesianVec& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
  CartesianVec operator-(const CartesianVec& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
  CartesianVec operator*(double s) const { return {s * x1, s * x2, s * x3}; }
  CartesianVec operator-() const { return {-x1, -x2, -x3}; }

  double dot(const CartesianVec& o) const { return x1 * o.x1 + x2 * o.x2 + x3 * o.x3; }
  CartesianVec cross(const CartesianVec& o) const {
    return {x2 * o.x3 - x3 * o.x2, x3 * o.x1 - x1 * o.x3, x1 * o.x2 - x2 * o.x1};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

inline CartesianVec operator*(double s, const CartesianVec& v) { return v * s; }

/// Point in spherical coordinates: rho > 0, azimuth theta in [0, 2*pi),
/// polar angle phi in [0, pi] measured from the positive x3-axis.
struct SphericalPoint {
  double rho = 1.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Vector components in the local orthonormal frame (e_rho, e_theta, e_phi)
/// attached to some SphericalPoint.
struct SphericalVec {
  double v_rho = 0.0;
  double v_theta = 0.0;
  double v_phi = 0.0;

  SphericalVec operator+(const SphericalVec& o) const {
    return {v_rho + o.v_rho, v_theta + o.v_theta, v_phi + o.v_phi};
  }
  SphericalVec operator-(const SphericalVec& o) const {
    return {v_rho - o.v_rho, v_theta - o.v_theta, v_phi - o.v_phi};
  }
  SphericalVec operator*(double s) const { return {s * v_rho, s * v_theta, s * v_phi}; }
  double norm() const { return std::sqrt(v_rho * v_rho + v_theta * v_theta + v_phi * v_phi); }
};

inline SphericalVec operator*(double s, const SphericalVec& v) { return v * s; }

/// The orthonormal frame at a point, expressed in Cartesian components.
struct FrameBasis {
  CartesianVec e_rho;
  CartesianVec e_theta;
  CartesianVec e_phi;
};

/// (rho sin(phi) cos(theta), rho sin(phi) sin(theta), rho cos(phi)).
CartesianVec to_cartesian(const SphericalPoint& p);

/// Inverse coordinate map. Convention: theta = 0 on the polar axis.
/// Throws ZeroVector for the origin.
SphericalPoint to_spherical(const CartesianVec& v);

/// e_rho = x/rho, e_theta = (-sin theta, cos theta, 0), e_phi = e_theta x e_rho.
/// On the axis the frame is the limit along the theta = 0 meridian.
FrameBasis basis_vectors(const SphericalPoint& p);

/// Map frame components at `at` to Cartesian components.
CartesianVec to_cartesian(const SphericalVec& v, const SphericalPoint& at);

/// Project a Cartesian vector onto the frame at `at`.
SphericalVec to_frame(const CartesianVec& v, const SphericalPoint& at);

/// Direction selector for covariant derivatives: one of the frame vectors.
enum class FrameDirection { e_rho, e_theta, e_phi };

/// Vector field given by its frame components as functions of (rho, theta, phi).
///
/// Partial derivatives of the component triple may be supplied analytically;
/// when a slot is empty the library falls back to central differences with
/// step fd_step * max(1, rho) in rho and fd_step in the angles.
struct SphericalField {
  std::function<SphericalVec(const SphericalPoint&)> value;
  std::function<SphericalVec(const SphericalPoint&)> d_rho;    // optional
  std::function<SphericalVec(const SphericalPoint&)> d_theta;  // optional
  std::function<SphericalVec(const SphericalPoint&)> d_phi;    // optional
  double fd_step = 1e-5;
};

/// Covariant derivative of `field` along the frame direction at `at`,
/// returned in frame components.
///
/// Derivatives along e_theta involve cot(phi) and 1/sin(phi) and throw
/// AxisSingularity on the axis; the limit there is direction dependent.
SphericalVec covariant_derivative(const SphericalField& field, FrameDirection dir,
                                  const SphericalPoint& at);

}  // namespace ssmhd

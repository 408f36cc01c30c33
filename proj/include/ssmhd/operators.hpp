#pragma once

#include <functional>

#include "ssmhd/geometry.hpp"
#include "ssmhd/profile.hpp"

namespace ssmhd {

// ---------------------------------------------------------------------------
// Differential operators for self-similar axisymmetric fields
//   u = (f/rho) e_rho + (g/rho) e_phi + (h/rho) e_theta,
//   B = (B/rho) e_theta,  p = P/rho^2.
// Every vector operator below scales as rho^-3; divergence as rho^-2.
// Results are reported in the local spherical frame; mapping to Cartesian is
// an explicit separate step through the geometry module.
// ---------------------------------------------------------------------------

/// Laplacian of u:
///   (1/rho^3) [ (f'' + f' cot - 2(f + g' + g cot)) e_rho
///             + (2f + g' + g cot)' e_phi + (h' + h cot)' e_theta ].
SphericalVec laplacian_u(const Profile& pr, const SphericalPoint& at);

/// div u = (f + g' + g cot(phi)) / rho^2.
double divergence_u(const Profile& pr, const SphericalPoint& at);

/// Selector for the bilinear convective terms.
enum class ConvectivePair { uu, uB, Bu };

/// (u.grad)u, (u.grad)B or (B.grad)u of the profile field.
SphericalVec convective(const Profile& pr, ConvectivePair pair, const SphericalPoint& at);

/// grad p = (1/rho^3)(-2P e_rho + P' e_phi).
SphericalVec pressure_gradient(const Profile& pr, const SphericalPoint& at);

// ---------------------------------------------------------------------------
// Field reconstruction
// ---------------------------------------------------------------------------

using CartesianField = std::function<CartesianVec(const CartesianVec&)>;
using ScalarField = std::function<double(const CartesianVec&)>;

/// u as a Cartesian closure.
CartesianField velocity_field(const Profile& pr);

/// B = (B/rho) e_theta as a Cartesian closure.
CartesianField swirl_field(const Profile& pr);

/// p = P/rho^2 as a Cartesian closure.
ScalarField pressure_field(const Profile& pr);

/// u as a spherical-frame field with analytic partial derivatives
/// (feeds covariant_derivative without finite differences).
SphericalField spherical_velocity_field(const Profile& pr);

/// 3x3 matrix, row-major; columns are images of the Cartesian axes.
struct Mat3 {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

  CartesianVec apply(const CartesianVec& v) const {
    return {m[0][0] * v.x1 + m[0][1] * v.x2 + m[0][2] * v.x3,
            m[1][0] * v.x1 + m[1][1] * v.x2 + m[1][2] * v.x3,
            m[2][0] * v.x1 + m[2][1] * v.x2 + m[2][2] * v.x3};
  }
  Mat3 transpose() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.m[i][j] = m[j][i];
    return t;
  }
};

/// Analytic Cartesian Jacobian d u_i / d x_j of the profile velocity field,
/// assembled from frame covariant derivatives.
Mat3 velocity_jacobian(const Profile& pr, const CartesianVec& at);

// ---------------------------------------------------------------------------
// Cartesian finite-difference oracle (second-order central stencils)
// ---------------------------------------------------------------------------

/// Componentwise 7-point Laplacian. Throws StepTooLarge if the stencil could
/// reach the x3-axis or the origin.
CartesianVec fd_laplacian(const CartesianField& F, const CartesianVec& at, double h);

double fd_divergence(const CartesianField& F, const CartesianVec& at, double h);

/// J[i][j] = d F_i / d x_j by central differences.
Mat3 fd_jacobian(const CartesianField& F, const CartesianVec& at, double h);

/// (W.grad)V evaluated as J_V * W(at).
CartesianVec fd_convective(const CartesianField& W, const CartesianField& V,
                           const CartesianVec& at, double h);

CartesianVec fd_gradient(const ScalarField& F, const CartesianVec& at, double h);

}  // namespace ssmhd

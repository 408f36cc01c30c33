#pragma once

#include "ssmhd/geometry.hpp"
#include "ssmhd/operators.hpp"
#include "ssmhd/profile.hpp"

namespace ssmhd {

/// Parameter of one Landau solution; valid strictly outside [-1, 1].
class LandauParam {
 public:
  explicit LandauParam(double a);
  double a() const { return a_; }

 private:
  double a_;
};

/// beta = 16 pi [ a + (a^2/2) ln((a-1)/(a+1)) + 4a / (3(a^2-1)) ].
/// Odd in a; decays like 16 pi / a for large |a|.
double beta_from_a(const LandauParam& a);

/// Branch selector for the inverse relation (sign of a).
enum class Branch { positive, negative };

/// Numerical inverse of beta_from_a on the requested branch.
/// Bracketed bisection with adaptive bracket expansion, then secant polish;
/// the round trip holds to better than 1e-10.
/// Throws DomainError for beta = 0 or a branch/sign mismatch,
/// NoBracket if no sign change is found up to a = 1e12.
LandauParam a_from_beta(double beta, Branch branch);

/// Velocity (frame components) and pressure of the axis-aligned Landau
/// solution at a point:
///   U = (2/rho) [ ((a^2-1)/(a-cos phi)^2 - 1) e_rho - (sin phi/(a-cos phi)) e_phi ],
///   P = 4 (a cos phi - 1) / (rho^2 (a-cos phi)^2).
struct LandauSample {
  SphericalVec velocity;
  double pressure = 0.0;
};
LandauSample landau_field(const LandauParam& a, const SphericalPoint& at);

/// The same solution as a Profile with analytic derivatives:
///   f = 2(a^2-1)/(a-cos phi)^2 - 2,  g = 2 sin phi/(cos phi - a),
///   h = B = 0,  P = f - g^2/2.
Profile landau_profiles(const LandauParam& a);

/// Point force of the source: direction and magnitude.
class ForceVector {
 public:
  explicit ForceVector(const CartesianVec& b);  // throws ZeroForce for b = 0
  const CartesianVec& b() const { return b_; }
  double beta() const { return beta_; }
  CartesianVec axis() const { return b_ * (1.0 / beta_); }

 private:
  CartesianVec b_;
  double beta_;  // |b|
};

/// Landau solution for a general force direction, obtained by conjugating the
/// axis-aligned solution with the rotation taking (0,0,1) to b/|b|.
struct CartesianSample {
  CartesianVec velocity;
  double pressure = 0.0;
};
CartesianSample rotate_to_b(const ForceVector& b, const CartesianVec& at);

/// Momentum flux through the sphere |x| = radius:
///   integral of u (u.n) + p n - (grad u + grad u^T) n  dS,
/// by product Gauss-Legendre (in cos phi) x uniform (in theta) quadrature
/// with 2*order azimuthal points. Converges to (0, 0, beta_from_a(a)).
CartesianVec force_flux(const LandauParam& a, double radius, int order);

}  // namespace ssmhd

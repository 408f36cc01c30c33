#pragma once

#include <array>
#include <vector>

#include "ssmhd/landau.hpp"
#include "ssmhd/profile.hpp"

namespace ssmhd {

/// Residuals of the reduced ODE system, each oriented LHS - RHS:
///   r1: f'' + f' cot = f' g - (f^2 + g^2 + h^2) + B^2 - 2P
///   r2: f' = g' g - h^2 cot + B^2 cot + P'
///   r3: (h' + h cot)' = g (h' + h cot)
///   r4: 0 = g B' - g B cot - 2 B f
///   r5: 0 = f + g' + g cot
struct OdeResidual {
  double r1 = 0, r2 = 0, r3 = 0, r4 = 0, r5 = 0;
  double max_abs() const;
};

/// Angular domain selector: (0, pi) for the whole space, (0, pi/2) for the
/// half space. The residual formulas are identical; only the interval differs.
enum class DomainKind { full, half };

OdeResidual ode_residuals(const Profile& pr, DomainKind domain, double phi);

/// Boundary condition sets in profile form.
enum class BoundaryKind { full_space, noslip, navier_slip };

/// Endpoint functionals of the active boundary set, taken as limits from the
/// interior. The symmetry set at phi = 0 is (f'(0), g(0), h(0), B(0)); the
/// far set is (f', g, h, B)(pi) for the whole space, (f, g, h)(pi/2) for
/// no-slip and (f', g, h')(pi/2) for Navier slip.
struct BoundaryResidual {
  BoundaryKind kind = BoundaryKind::full_space;
  std::array<double, 4> axis{};  // f'(0), g(0), h(0), B(0)
  std::vector<double> far;
  double max_abs() const;
};

BoundaryResidual boundary_residuals(const Profile& pr, BoundaryKind bc);

/// Evaluate one endpoint functional as a limit. Uses the value itself when the
/// profile domain reaches the endpoint, otherwise one-sided Richardson
/// extrapolation from interior offsets {1e-3, 5e-4, 2.5e-4}.
double endpoint_limit(const Profile& pr, const std::function<double(double)>& fn, double endpoint);

/// Derived quantities of the reduction chain:
///   H = h' + h cot,  J = f sin,  K = g sin,  Q = B g^2 sin.
/// Q is conserved along solutions of the last two equations; integration
/// constants C2, C3 belong to the pressure/f' integrals.
struct ReductionQuantities {
  double H = 0, J = 0, K = 0, Q = 0;
  double C2 = 0, C3 = 0;
};

ReductionQuantities reduction_quantities(const Profile& pr, double phi);

/// P = f - g^2/2 - C2.
AngularFn pressure_recover(const AngularFn& f, const AngularFn& g, double C2);

/// Closed-form solution chain: w(t) = 2/(t-a) with t = cos phi,
/// L = (1-t^2) w, K = L(cos phi), g = K/sin, f = L'(t),
/// P recovered with C2 = 0. Coincides with landau_profiles(a).
Profile closed_form_chain(const LandauParam& a);

/// Two routes to the tangential traction on the plane x3 = 0:
/// the Cartesian strain tensor of the reconstructed field (finite differences)
/// against the profile functionals (f'(pi/2), h'(pi/2)). Only meaningful when
/// g(pi/2) = 0 (vanishing normal velocity); throws GNotZero otherwise.
/// `agreement` is true when both routes report zero traction.
struct NavierSlipCheck {
  std::array<double, 2> cartesian_stress{};  // (Du n).tau for tau = e1, e2
  std::array<double, 2> profile_form{};      // f'(pi/2), h'(pi/2)
  bool agreement = false;
};

NavierSlipCheck navier_slip_equivalence(const Profile& pr);

}  // namespace ssmhd

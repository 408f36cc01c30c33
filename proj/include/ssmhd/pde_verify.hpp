#pragma once

#include <array>
#include <span>
#include <vector>

#include "ssmhd/operators.hpp"
#include "ssmhd/profile_system.hpp"

namespace ssmhd {

/// Cartesian sampling region for grid verification. Points inside the
/// exclusion cylinder around the x3-axis or the exclusion ball around the
/// origin are skipped; (-1)-homogeneous fields are singular there.
struct GridRegion {
  std::array<double, 3> lo{-2.0, -2.0, -2.0};
  std::array<double, 3> hi{2.0, 2.0, 2.0};
  int points_per_axis = 101;
  double axis_exclusion = 0.1;
  double origin_exclusion = 0.2;

  double spacing() const;
  /// Throws DomainError unless both exclusion radii exceed twice the spacing.
  void validate() const;
};

/// The (u, B, p) triple as Cartesian closures. A missing B means B = 0.
struct MhdFields {
  CartesianField u;
  CartesianField B;  // optional
  ScalarField p;
};

/// Residual norms of the stationary system on a grid:
///   momentum:  -lap u + (u.grad)u - (B.grad)B + grad p
///   induction: (u.grad)B - (B.grad)u   (frame-free vector)
///   div u, div B
struct ResidualReport {
  double momentum_max = 0, momentum_rms = 0;
  double induction_max = 0, induction_rms = 0;
  double div_u_max = 0, div_u_rms = 0;
  double div_B_max = 0, div_B_rms = 0;
  double boundary_residual_max = 0;  // filled by boundary_check runs
  long points = 0;
  double fd_step = 0;
  GridRegion region;
};

/// Second-order central-difference evaluation of all residual groups at every
/// non-excluded grid point. Throws ExclusionViolation if the stencil width
/// could reach the singular set through an exclusion zone.
ResidualReport mhd_residual_grid(const MhdFields& fields, const GridRegion& region, double h,
                                 int threads = 1);

/// Deviation from scaling invariance:
///   max over samples and lambdas of |lambda u(lambda x) - u(x)| and the
///   lambda B, lambda^2 p analogues.
struct ScalingDeviation {
  double u_dev = 0, B_dev = 0, p_dev = 0;
  double max_dev() const { return std::max({u_dev, B_dev, p_dev}); }
};

ScalingDeviation scaling_invariance_check(const MhdFields& fields, std::span<const double> lambdas,
                                          std::span<const CartesianVec> samples);

/// Maximum boundary-condition violation over samples on the plane x3 = 0:
/// no-slip checks |u| and |B.n|; Navier slip checks |u.n|, the tangential
/// strain components (one-sided differences into x3 > 0) and |B.n|.
double boundary_check(const MhdFields& fields, BoundaryKind bc,
                      std::span<const CartesianVec> plane_samples, double fd_step = 1e-6);

}  // namespace ssmhd

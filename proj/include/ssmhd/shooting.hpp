#pragma once

#include <array>
#include <vector>

#include "ssmhd/ode.hpp"
#include "ssmhd/profile.hpp"
#include "ssmhd/profile_system.hpp"

namespace ssmhd {

/// How the B component is handled along a trajectory. The direct ODE for B,
/// B' = B cot(phi) + 2 B f / g, is singular wherever g vanishes (including the
/// axis), so the default branch keeps B identically zero; the conserved branch
/// integrates the singular equation behind a |g| guard for diagnostics.
enum class BMode { zero, conserved };

/// Free data of the regular axis expansion. The symmetry set
/// f'(0) = g(0) = h(0) = B(0) = 0 holds by construction.
struct AxisParams {
  double f0 = 0.0;        // f(0)
  double h1 = 0.0;        // lim h/phi
  double P0 = 0.0;        // P(0)
  BMode b_mode = BMode::zero;
  double b1 = 0.0;        // lim B/phi, conserved branch only (diagnostics)
};

/// First-order shooting state y = (f, f', g, h, h', B, P) at an angle.
/// g' is recovered algebraically from the divergence equation as
/// g' = -f - g cot(phi) and is not part of the state.
struct ShootingState {
  std::array<double, 7> y{};
  double phi = 0.0;

  double f() const { return y[0]; }
  double fp() const { return y[1]; }
  double g() const { return y[2]; }
  double h() const { return y[3]; }
  double hp() const { return y[4]; }
  double B() const { return y[5]; }
  double P() const { return y[6]; }
};

struct ShootingConfig {
  double epsilon = 1e-6;  // axis offset of the series start
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.01;
  double newton_tol = 1e-10;
  int max_newton_iters = 50;
  double blow_up_limit = 1e8;
};

/// Right-hand side of the first-order recast of the profile system.
OdeRhs profile_rhs(BMode mode);

/// Second-order regular series at phi = epsilon:
///   f = f0 + f2 eps^2 with f2 = -(f0^2 + 2 P0)/4 (phi -> 0 limit of the
///   f equation), g = -(f0/2) eps, h = h1 eps, B = 0 (or b1 eps),
///   P = P0 + P2 eps^2 with P2 = f2 - f0^2/8 + (h1^2 - b1^2)/2.
ShootingState axis_series_init(const AxisParams& p, double epsilon);

enum class IntegrateStatus { ok, blow_up, stiffness_failure };

/// Trajectory with a continuous extension; the profile takes values and both
/// derivatives from the dense interpolant.
struct IntegratedProfile {
  IntegrateStatus status = IntegrateStatus::ok;
  double phi_reached = 0.0;
  Profile profile;
  ShootingState final_state;
  long n_steps = 0;
  long n_rhs = 0;
};

/// Adaptive integration from the series point to to_phi. Finite-angle blow-up
/// is reported in the status, not thrown.
IntegratedProfile integrate_profile(const ShootingState& init, double to_phi,
                                    const ShootingConfig& cfg, BMode mode = BMode::zero);

/// One axis parameter of a shooting problem: either held fixed or adjusted by
/// Newton from a grid of starting values.
struct ParamRange {
  double lo = 0.0, hi = 0.0, step = 1.0;
  bool free = false;

  static ParamRange fixed(double v) { return {v, v, 1.0, false}; }
  static ParamRange start(double v) { return {v, v, 1.0, true}; }
  static ParamRange scan(double lo, double hi, double step) { return {lo, hi, step, true}; }

  std::vector<double> values() const;
};

struct ShootSpec {
  BoundaryKind bc = BoundaryKind::full_space;
  ParamRange f0 = ParamRange::fixed(0.0);
  ParamRange h1 = ParamRange::fixed(0.0);
  ParamRange P0 = ParamRange::fixed(0.0);
};

struct ShootRoot {
  AxisParams params;
  double mismatch = 0.0;
};

struct ShootReport {
  std::vector<ShootRoot> roots;  // deduplicated at parameter distance 1e-6
  long starts = 0;
  long converged = 0;
  long failed = 0;
};

/// Damped Gauss-Newton refinement from every scan grid node. The endpoint
/// functionals come from a parameter-independent graded mesh so the mismatch
/// map is smooth; full-space targets are Richardson limits at pi, half-space
/// targets are read directly at pi/2.
ShootReport shoot(const ShootSpec& spec, const ShootingConfig& cfg, int threads = 1);

/// Evaluate the mismatch vector once at the given axis parameters.
std::vector<double> shoot_mismatch(const AxisParams& p, BoundaryKind bc,
                                   const ShootingConfig& cfg);

/// Least-squares fit of the profile's f against the one-parameter family
/// f_a(phi) = 2(a^2-1)/(a - cos phi)^2 - 2 over |a| > 1.
struct LandauFit {
  double a = 0.0;
  double rms = 0.0;
};

LandauFit fit_landau_a(const Profile& pr, int n_samples = 201);

}  // namespace ssmhd

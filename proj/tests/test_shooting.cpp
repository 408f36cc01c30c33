#include "ssmhd/shooting.hpp"

#include <cmath>

#include "doctest.h"
#include "ssmhd/landau.hpp"

using namespace ssmhd;

TEST_CASE("axis series: symmetry set and leading coefficients") {
  AxisParams p;
  p.f0 = 4.0;
  p.h1 = 0.0;
  p.P0 = 4.0;
  const ShootingState st = axis_series_init(p, 1e-6);
  CHECK(st.g() == doctest::Approx(-2e-6).epsilon(1e-9));  // g1 = -f0/2
  CHECK(st.h() == 0.0);
  CHECK(st.B() == 0.0);
  CHECK(st.f() == doctest::Approx(4.0 - 6e-12).epsilon(1e-14));  // f2 = -6

  const ShootingState z = axis_series_init(AxisParams{}, 1e-6);
  for (double v : z.y) CHECK(v == 0.0);

  CHECK_THROWS_AS(axis_series_init(p, 0.0), DomainError);
  CHECK_THROWS_AS(axis_series_init(p, 0.1), DomainError);
}

TEST_CASE("axis series matches the closed form through second order") {
  const Profile ref = landau_profiles(LandauParam(2.0));
  AxisParams p;
  p.f0 = 4.0;
  p.P0 = 4.0;  // pressure_recover at 0 with C2 = 0
  for (double eps : {1e-6, 1e-5}) {
    const ShootingState st = axis_series_init(p, eps);
    CHECK(std::abs(st.f() - ref.f(eps)) < 40.0 * eps * eps * eps * eps + 1e-14);
    CHECK(std::abs(st.g() - ref.g(eps)) < 10.0 * eps * eps * eps + 1e-14);
    CHECK(std::abs(st.P() - ref.P(eps)) < 40.0 * eps * eps * eps * eps + 1e-14);
    CHECK(std::abs(st.fp() - ref.f.deriv(eps)) < 60.0 * eps * eps * eps + 1e-14);
  }
}

TEST_CASE("integration reproduces the closed form across the sphere") {
  ShootingConfig cfg;
  AxisParams p;
  p.f0 = 4.0;
  p.P0 = 4.0;
  const IntegratedProfile traj =
      integrate_profile(axis_series_init(p, cfg.epsilon), kPi - 2.5e-4, cfg);
  REQUIRE(traj.status == IntegrateStatus::ok);
  const Profile ref = landau_profiles(LandauParam(2.0));
  CHECK(std::abs(traj.profile.f(kPi / 2) - (-0.5)) < 1e-8);
  CHECK(std::abs(traj.profile.g(kPi / 2) - (-1.0)) < 1e-8);
  double dev = 0.0;
  for (int i = 1; i < 500; ++i) {
    const double phi =
        traj.profile.phi_min + (traj.profile.phi_max - traj.profile.phi_min) * i / 500.0;
    dev = std::max({dev, std::abs(traj.profile.f(phi) - ref.f(phi)),
                    std::abs(traj.profile.g(phi) - ref.g(phi)),
                    std::abs(traj.profile.P(phi) - ref.P(phi))});
  }
  CHECK(dev < 1e-8);
}

TEST_CASE("zero initial data stays zero") {
  ShootingConfig cfg;
  const IntegratedProfile traj =
      integrate_profile(axis_series_init(AxisParams{}, cfg.epsilon), 2.0, cfg);
  REQUIRE(traj.status == IntegrateStatus::ok);
  for (double phi : {0.5, 1.0, 1.8}) {
    CHECK(std::abs(traj.profile.f(phi)) < 1e-14);
    CHECK(std::abs(traj.profile.g(phi)) < 1e-14);
    CHECK(std::abs(traj.profile.P(phi)) < 1e-14);
  }
}

TEST_CASE("integrated-profile residuals stay within ten times the tolerance") {
  ShootingConfig cfg;  // rtol 1e-10
  AxisParams p;
  p.f0 = 4.0;
  p.P0 = 4.0;
  const IntegratedProfile traj =
      integrate_profile(axis_series_init(p, cfg.epsilon), kPi - 2.5e-4, cfg);
  REQUIRE(traj.status == IntegrateStatus::ok);
  double worst = 0.0;
  for (int i = 1; i < 2000; ++i) {
    const double phi =
        traj.profile.phi_min + (traj.profile.phi_max - traj.profile.phi_min) * i / 2000.0;
    worst = std::max(worst, ode_residuals(traj.profile, DomainKind::full, phi).max_abs());
  }
  CHECK(worst < 10.0 * cfg.rtol);
}

TEST_CASE("strong jet with mismatched pressure blows up before the far pole") {
  // behavioral reference frozen from the first run: the f0 = 50, P0 = 0
  // trajectory exceeds the state bound just short of pi
  ShootingConfig cfg;
  AxisParams p;
  p.f0 = 50.0;
  const IntegratedProfile traj =
      integrate_profile(axis_series_init(p, cfg.epsilon), kPi - 2.5e-4, cfg);
  CHECK(traj.status == IntegrateStatus::blow_up);
  CHECK(traj.phi_reached > 3.0);
}

TEST_CASE("full-space shooting lands on the Landau point") {
  ShootingConfig cfg;
  ShootSpec spec;
  spec.bc = BoundaryKind::full_space;
  spec.f0 = ParamRange::fixed(4.0);
  spec.h1 = ParamRange::start(0.5);
  spec.P0 = ParamRange::start(3.0);
  const ShootReport rep = shoot(spec, cfg, 1);
  REQUIRE(rep.roots.size() == 1);
  CHECK(rep.converged == 1);
  CHECK(std::abs(rep.roots[0].params.h1) < 1e-8);
  CHECK(std::abs(rep.roots[0].params.P0 - 4.0) < 1e-8);
  CHECK(rep.roots[0].mismatch < cfg.newton_tol);
}

TEST_CASE("family recovery across the Landau branch") {
  ShootingConfig cfg;
  const double want_a[3] = {1.5, 2.0, 5.0};
  for (int k = 0; k < 3; ++k) {
    const double f0 = 4.0 / (want_a[k] - 1.0);
    ShootSpec spec;
    spec.bc = BoundaryKind::full_space;
    spec.f0 = ParamRange::fixed(f0);
    spec.h1 = ParamRange::start(0.25);
    // the P0 grid brackets the root P0 = f0; far-off starts blow up
    spec.P0 = ParamRange::scan(0.6 * f0, 1.0 * f0, 0.2 * f0);
    const ShootReport rep = shoot(spec, cfg, 1);
    REQUIRE(rep.roots.size() == 1);
    CHECK(std::abs(rep.roots[0].params.h1) < 1e-8);  // B = 0 by branch, h -> 0

    const IntegratedProfile traj =
        integrate_profile(axis_series_init(rep.roots[0].params, cfg.epsilon), kPi - 2.5e-4, cfg);
    REQUIRE(traj.status == IntegrateStatus::ok);
    double worst = 0.0;
    for (int i = 1; i < 500; ++i) {
      const double phi =
          traj.profile.phi_min + (traj.profile.phi_max - traj.profile.phi_min) * i / 500.0;
      worst = std::max(worst, ode_residuals(traj.profile, DomainKind::full, phi).max_abs());
    }
    CHECK(worst < 1e-8);

    const LandauFit fit = fit_landau_a(traj.profile);
    CHECK(std::abs(fit.a - want_a[k]) < 1e-6);
    CHECK(fit.rms < 1e-8);
  }
}

TEST_CASE("boundary functionals of the a = 2 shooting root") {
  ShootingConfig cfg;
  AxisParams root;
  root.f0 = 4.0;
  root.P0 = 4.0;
  const IntegratedProfile traj =
      integrate_profile(axis_series_init(root, cfg.epsilon), kPi - 2.5e-4, cfg);
  CHECK(boundary_residuals(traj.profile, BoundaryKind::full_space).max_abs() < 1e-8);
}

TEST_CASE("half-space scans find only the trivial root (coarse rehearsal)") {
  ShootingConfig cfg;
  for (BoundaryKind bc : {BoundaryKind::noslip, BoundaryKind::navier_slip}) {
    ShootSpec spec;
    spec.bc = bc;
    spec.f0 = ParamRange::scan(-10.0, 10.0, 5.0);
    spec.h1 = ParamRange::fixed(0.0);
    spec.P0 = ParamRange::scan(-10.0, 10.0, 5.0);
    const ShootReport rep = shoot(spec, cfg, 4);
    REQUIRE(rep.roots.size() == 1);
    const AxisParams& r = rep.roots[0].params;
    CHECK(std::sqrt(r.f0 * r.f0 + r.h1 * r.h1 + r.P0 * r.P0) < 1e-6);
  }
}

TEST_CASE("axis offset study: the series start does not limit the accuracy") {
  const Profile ref = landau_profiles(LandauParam(2.0));
  AxisParams p;
  p.f0 = 4.0;
  p.P0 = 4.0;
  for (double eps : {1e-5, 1e-6, 1e-7}) {
    ShootingConfig cfg;
    const IntegratedProfile traj = integrate_profile(axis_series_init(p, eps), kPi / 2, cfg);
    REQUIRE(traj.status == IntegrateStatus::ok);
    const double dev = std::max(std::abs(traj.profile.f(kPi / 2) - ref.f(kPi / 2)),
                                std::abs(traj.profile.g(kPi / 2) - ref.g(kPi / 2)));
    CHECK(dev < 1e-9);
  }
}

TEST_CASE("tolerance scaling of the trajectory error") {
  const Profile ref = landau_profiles(LandauParam(2.0));
  AxisParams p;
  p.f0 = 4.0;
  p.P0 = 4.0;
  auto dev_at = [&](double rtol, double max_step) {
    ShootingConfig cfg;
    cfg.rtol = rtol;
    cfg.atol = rtol * 1e-2;
    cfg.max_step = max_step;
    const IntegratedProfile traj = integrate_profile(axis_series_init(p, cfg.epsilon), kPi / 2, cfg);
    REQUIRE(traj.status == IntegrateStatus::ok);
    return std::max(std::abs(traj.profile.f(kPi / 2) - ref.f(kPi / 2)),
                    std::abs(traj.profile.g(kPi / 2) - ref.g(kPi / 2)));
  };
  // With the default step cap the deviation sits below the 1e-12 floor for
  // the whole halving ladder.
  double prev = dev_at(4e-10, 0.01);
  for (double rtol : {2e-10, 1e-10}) {
    const double dev = dev_at(rtol, 0.01);
    CHECK(dev <= std::max(prev / 4.0, 1e-12));
    prev = dev;
  }
  // Uncapped steps expose the genuine tolerance proportionality: each
  // hundredfold tolerance cut buys well over a fourfold error cut.
  prev = dev_at(1e-4, kPi);
  for (double rtol : {1e-6, 1e-8, 1e-10}) {
    const double dev = dev_at(rtol, kPi);
    CHECK(dev < prev / 4.0);
    prev = dev;
  }
}

TEST_CASE("conserved branch: Q drift along an interior trajectory with B != 0") {
  // start inside the interval with a hand-built state; the conserved quantity
  // B g^2 sin must hold to integrator accuracy
  ShootingConfig cfg;
  const Profile ref = landau_profiles(LandauParam(2.0));
  const double phi0 = 0.8;
  ShootingState st;
  st.phi = phi0;
  st.y = {ref.f(phi0), ref.f.deriv(phi0), ref.g(phi0), 0.0, 0.0, 1.0, ref.P(phi0)};
  const IntegratedProfile traj = integrate_profile(st, 2.5, cfg, BMode::conserved);
  REQUIRE(traj.status == IntegrateStatus::ok);
  const double q0 = reduction_quantities(traj.profile, phi0 + 1e-9).Q;
  for (int i = 1; i < 400; ++i) {
    const double phi = phi0 + (2.5 - phi0) * i / 400.0;
    CHECK(std::abs(reduction_quantities(traj.profile, phi).Q - q0) < 10.0 * cfg.rtol * std::abs(q0));
  }
}

TEST_CASE("conserved branch guards against g = 0") {
  ShootingConfig cfg;
  AxisParams p;
  p.f0 = 0.0;  // g stays zero near the axis
  p.h1 = 1.0;
  p.b_mode = BMode::conserved;
  p.b1 = 0.5;
  CHECK_THROWS_AS(integrate_profile(axis_series_init(p, cfg.epsilon), 2.0, cfg, BMode::conserved),
                  GuardTripped);
}

TEST_CASE("landau parameter fit") {
  const Profile pr = landau_profiles(LandauParam(2.0));
  const LandauFit fit = fit_landau_a(pr);
  CHECK(std::abs(fit.a - 2.0) < 1e-10);
  CHECK(fit.rms < 1e-12);

  const Profile neg = landau_profiles(LandauParam(-3.0));
  const LandauFit nfit = fit_landau_a(neg);
  CHECK(std::abs(nfit.a + 3.0) < 1e-9);

  CHECK_THROWS_AS(fit_landau_a(Profile::zero()), TrivialProfile);
}

TEST_CASE("mismatch functionals at the known solution are at the noise floor") {
  ShootingConfig cfg;
  AxisParams truth;
  truth.f0 = 4.0;
  truth.P0 = 4.0;
  const std::vector<double> m = shoot_mismatch(truth, BoundaryKind::full_space, cfg);
  REQUIRE(m.size() == 4);
  for (double v : m) CHECK(std::abs(v) < 1e-9);

  // blow-up before the far boundary surfaces as an error
  AxisParams wild;
  wild.f0 = 50.0;
  CHECK_THROWS_AS(shoot_mismatch(wild, BoundaryKind::full_space, cfg), Error);
}

TEST_CASE("scan results are independent of the thread count") {
  ShootingConfig cfg;
  ShootSpec spec;
  spec.bc = BoundaryKind::noslip;
  spec.f0 = ParamRange::scan(-6.0, 6.0, 3.0);
  spec.h1 = ParamRange::fixed(0.0);
  spec.P0 = ParamRange::scan(-6.0, 6.0, 3.0);
  const ShootReport one = shoot(spec, cfg, 1);
  const ShootReport four = shoot(spec, cfg, 4);
  CHECK(one.converged == four.converged);
  CHECK(one.failed == four.failed);
  REQUIRE(one.roots.size() == four.roots.size());
  for (std::size_t i = 0; i < one.roots.size(); ++i) {
    CHECK(one.roots[i].params.f0 == four.roots[i].params.f0);
    CHECK(one.roots[i].params.P0 == four.roots[i].params.P0);
    CHECK(one.roots[i].mismatch == four.roots[i].mismatch);
  }
}

TEST_CASE("shoot validates the unknown count") {
  ShootSpec spec;
  spec.bc = BoundaryKind::full_space;
  spec.f0 = ParamRange::fixed(4.0);
  spec.h1 = ParamRange::fixed(0.0);
  spec.P0 = ParamRange::fixed(4.0);
  CHECK_THROWS_AS(shoot(spec, ShootingConfig{}, 1), DomainError);
}

#include "ssmhd/operators.hpp"

#include <cmath>

#include "doctest.h"
#include "ssmhd/landau.hpp"
#include "ssmhd/sampling.hpp"

using namespace ssmhd;

namespace {

Profile constant_f_profile(double c) {
  Profile pr;
  pr.f = AngularFn::constant(c);
  pr.g = AngularFn::zero();
  pr.h = AngularFn::zero();
  pr.B = AngularFn::zero();
  pr.P = AngularFn::zero();
  return pr;
}

}  // namespace

TEST_CASE("laplacian of the zero profile vanishes") {
  const Profile pr = Profile::zero();
  const SphericalVec v = laplacian_u(pr, SphericalPoint{1.3, 0.2, 1.0});
  CHECK(v.norm() == 0.0);
}

TEST_CASE("laplacian of the a=2 Landau profile at the equator") {
  // Divergence-free kills the -2(f + g' + g cot) term, leaving f''(pi/2).
  const Profile pr = landau_profiles(LandauParam(2.0));
  const SphericalVec v = laplacian_u(pr, SphericalPoint{1.0, 0.0, kPi / 2});
  CHECK(v.v_rho == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(std::abs(v.v_theta) < 1e-14);
}

TEST_CASE("laplacian of a constant radial profile") {
  // e_rho component: (0 + 0 - 2 f)/rho^3 = -2/8 = -0.25 at rho = 2.
  const Profile pr = constant_f_profile(1.0);
  const SphericalVec v = laplacian_u(pr, SphericalPoint{2.0, 0.0, kPi / 3});
  CHECK(v.v_rho == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(std::abs(v.v_phi) < 1e-14);
  CHECK(std::abs(v.v_theta) < 1e-14);
}

TEST_CASE("divergence: Landau profiles are solenoidal, constant f is not") {
  const Profile landau = landau_profiles(LandauParam(2.0));
  for (const SphericalPoint& p : halton_points(100, 0.3, 3.0, 0.05, kPi - 0.05))
    CHECK(std::abs(divergence_u(landau, p)) < 1e-12);

  const Profile cf = constant_f_profile(1.0);
  CHECK(divergence_u(cf, SphericalPoint{2.0, 0.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(divergence_u(Profile::zero(), SphericalPoint{2.0, 0.0, 1.0}) == 0.0);
}

TEST_CASE("convective terms with h = B = 0") {
  const Profile pr = landau_profiles(LandauParam(2.0));
  const SphericalPoint p{1.4, 0.1, 0.9};
  CHECK(convective(pr, ConvectivePair::uB, p).norm() == 0.0);
  CHECK(convective(pr, ConvectivePair::Bu, p).norm() == 0.0);

  // e_rho component of (u.grad)u at the equator: f'g - f^2 - g^2 = 0.25
  const SphericalVec uu = convective(pr, ConvectivePair::uu, SphericalPoint{1.0, 0.0, kPi / 2});
  CHECK(uu.v_rho == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("uB minus Bu is the induction-equation combination") {
  Profile pr;
  pr.f = AngularFn::analytic([](double p) { return 0.4 + 0.2 * std::cos(p); },
                             [](double p) { return -0.2 * std::sin(p); },
                             [](double p) { return -0.2 * std::cos(p); });
  pr.g = AngularFn::analytic([](double p) { return 0.5 * std::sin(p); },
                             [](double p) { return 0.5 * std::cos(p); },
                             [](double p) { return -0.5 * std::sin(p); });
  pr.h = AngularFn::zero();
  pr.B = AngularFn::analytic([](double p) { return 0.3 * std::sin(p); },
                             [](double p) { return 0.3 * std::cos(p); },
                             [](double p) { return -0.3 * std::sin(p); });
  pr.P = AngularFn::zero();
  for (double phi : {0.5, 1.0, 1.9, 2.6}) {
    const SphericalPoint p{1.2, 0.0, phi};
    const SphericalVec diff =
        convective(pr, ConvectivePair::uB, p) - convective(pr, ConvectivePair::Bu, p);
    const double cot = std::cos(phi) / std::sin(phi);
    const double want = (pr.B.deriv(phi) * pr.g(phi) - 2.0 * pr.B(phi) * pr.f(phi) -
                         pr.B(phi) * pr.g(phi) * cot) /
                        (1.2 * 1.2 * 1.2);
    CHECK(std::abs(diff.v_rho) < 1e-15);
    CHECK(std::abs(diff.v_phi) < 1e-15);
    CHECK(diff.v_theta == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("pressure gradient") {
  Profile pr = Profile::zero();
  pr.P = AngularFn::constant(3.0);
  const SphericalVec c = pressure_gradient(pr, SphericalPoint{1.0, 0.0, 1.2});
  CHECK(c.v_rho == doctest::Approx(-6.0).epsilon(1e-14));
  CHECK(c.v_phi == 0.0);

  // P = sin^2/2: at phi = pi/4, (-2P, P') = (-0.5, 0.5)
  pr.P = AngularFn::analytic([](double p) { return 0.5 * std::sin(p) * std::sin(p); },
                             [](double p) { return std::sin(p) * std::cos(p); },
                             [](double p) { return std::cos(2.0 * p); });
  const SphericalVec v = pressure_gradient(pr, SphericalPoint{1.0, 0.0, kPi / 4});
  CHECK(v.v_rho == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(v.v_phi == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(v.v_theta == 0.0);

  CHECK(pressure_gradient(Profile::zero(), SphericalPoint{1.0, 0.0, 1.0}).norm() == 0.0);
}

TEST_CASE("axis and domain guards") {
  const Profile pr = landau_profiles(LandauParam(2.0));
  CHECK_THROWS_AS(laplacian_u(pr, SphericalPoint{1.0, 0.0, 0.0}), AxisSingularity);
  CHECK_THROWS_AS(divergence_u(pr, SphericalPoint{1.0, 0.0, kPi}), AxisSingularity);
  Profile half = pr;
  half.phi_max = kPi / 2;
  CHECK_THROWS_AS(laplacian_u(half, SphericalPoint{1.0, 0.0, 2.0}), OutOfDomain);
}

TEST_CASE("finite-difference oracle is exact on low-degree polynomials") {
  const CartesianField linear = [](const CartesianVec& x) { return x; };
  CHECK(fd_divergence(linear, CartesianVec{0.7, 0.4, 0.9}, 1e-3) ==
        doctest::Approx(3.0).epsilon(1e-10));

  const CartesianField quad = [](const CartesianVec& x) {
    return CartesianVec{x.x1 * x.x1, 0.0, 0.0};
  };
  const CartesianVec lap = fd_laplacian(quad, CartesianVec{0.5, 0.6, 0.4}, 1e-3);
  CHECK(lap.x1 == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(lap.x2) < 1e-10);
}

TEST_CASE("oracle refuses steps that reach the singular set") {
  const CartesianField linear = [](const CartesianVec& x) { return x; };
  CHECK_THROWS_AS(fd_divergence(linear, CartesianVec{0.05, 0.0, 2.0}, 0.1), StepTooLarge);
  CHECK_THROWS_AS(fd_laplacian(linear, CartesianVec{0.05, 0.05, 0.02}, 0.5), StepTooLarge);
}

TEST_CASE("operator outputs scale as rho^-3 exactly") {
  const Profile pr = landau_profiles(LandauParam(5.0));
  for (double phi : {0.3, 1.1, 2.2, 2.9}) {
    const SphericalPoint p1{1.3, 0.0, phi};
    const SphericalPoint p2{2.6, 0.0, phi};
    const SphericalVec a = laplacian_u(pr, p1), b = laplacian_u(pr, p2);
    CHECK((a * (1.0 / 8.0) - b).norm() <= 1e-12 * a.norm());
    const SphericalVec cu = convective(pr, ConvectivePair::uu, p1),
                       cv = convective(pr, ConvectivePair::uu, p2);
    CHECK((cu * (1.0 / 8.0) - cv).norm() <= 1e-12 * (cu.norm() + 1e-300));
    const SphericalVec ga = pressure_gradient(pr, p1), gb = pressure_gradient(pr, p2);
    CHECK((ga * (1.0 / 8.0) - gb).norm() <= 1e-12 * ga.norm());
  }
}

TEST_CASE("swirl-free profiles have no e_theta component") {
  const Profile pr = landau_profiles(LandauParam(1.5));
  for (const SphericalPoint& p : halton_points(50, 0.5, 3.0, 0.1, kPi - 0.1)) {
    CHECK(laplacian_u(pr, p).v_theta == 0.0);
    CHECK(convective(pr, ConvectivePair::uu, p).v_theta == 0.0);
  }
}

TEST_CASE("landau laplacian converges to the oracle at second order") {
  const Profile pr = landau_profiles(LandauParam(2.0));
  const CartesianField u = velocity_field(pr);
  for (const SphericalPoint& sp : halton_points(15, 0.8, 2.0, 0.4, kPi - 0.4)) {
    const CartesianVec x = to_cartesian(sp);
    const CartesianVec have = to_cartesian(laplacian_u(pr, sp), sp);
    double err[2];
    for (int k = 0; k < 2; ++k) {
      const double h = k == 0 ? 2e-3 : 1e-3;
      err[k] = (have - fd_laplacian(u, x, h)).norm();
    }
    if (err[1] > 1e-10) CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.2));
  }
}

TEST_CASE("velocity jacobian matches the finite-difference jacobian") {
  const Profile pr = landau_profiles(LandauParam(2.0));
  for (const SphericalPoint& sp : halton_points(20, 0.5, 2.0, 0.3, kPi - 0.3)) {
    const CartesianVec x = to_cartesian(sp);
    const Mat3 a = velocity_jacobian(pr, x);
    const Mat3 b = fd_jacobian(velocity_field(pr), x, 1e-5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(a.m[i][j] == doctest::Approx(b.m[i][j]).epsilon(1e-6));
  }
}

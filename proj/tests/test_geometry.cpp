#include "ssmhd/geometry.hpp"

#include <cmath>

#include "doctest.h"
#include "ssmhd/sampling.hpp"

using namespace ssmhd;

namespace {

// Smooth test field with analytic partials, regular near the axis.
SphericalField smooth_field() {
  SphericalField f;
  f.value = [](const SphericalPoint& p) {
    const double s2 = std::sin(p.phi) * std::sin(p.phi);
    return SphericalVec{0.4 * s2 * std::cos(p.theta) + 0.2 / (1.0 + p.rho),
                        0.3 * s2 * std::sin(p.theta) + 0.1 * std::cos(p.phi),
                        0.2 * s2 * std::cos(p.theta) + 0.1 / (1.0 + p.rho)};
  };
  f.d_rho = [](const SphericalPoint& p) {
    const double q = (1.0 + p.rho) * (1.0 + p.rho);
    return SphericalVec{-0.2 / q, 0.0, -0.1 / q};
  };
  f.d_theta = [](const SphericalPoint& p) {
    const double s2 = std::sin(p.phi) * std::sin(p.phi);
    return SphericalVec{-0.4 * s2 * std::sin(p.theta), 0.3 * s2 * std::cos(p.theta),
                        -0.2 * s2 * std::sin(p.theta)};
  };
  f.d_phi = [](const SphericalPoint& p) {
    const double sc = std::sin(p.phi) * std::cos(p.phi);
    return SphericalVec{0.8 * sc * std::cos(p.theta),
                        0.6 * sc * std::sin(p.theta) - 0.1 * std::sin(p.phi),
                        0.4 * sc * std::cos(p.theta)};
  };
  return f;
}

CartesianVec cartesian_rep(const SphericalField& f, const CartesianVec& x) {
  const SphericalPoint p = to_spherical(x);
  return to_cartesian(f.value(p), p);
}

}  // namespace

TEST_CASE("coordinate map hits the textbook points") {
  CartesianVec a = to_cartesian(SphericalPoint{1.0, 0.0, kPi / 2});
  CHECK(a.x1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(a.x2) < 1e-15);
  CHECK(std::abs(a.x3) < 1e-15);

  CartesianVec b = to_cartesian(SphericalPoint{2.0, kPi / 2, kPi / 2});
  CHECK(std::abs(b.x1) < 1e-15);
  CHECK(b.x2 == doctest::Approx(2.0).epsilon(1e-14));

  // (rho=1, theta=0, phi=pi/3) -> (sqrt(3)/2, 0, 1/2)
  CartesianVec c = to_cartesian(SphericalPoint{1.0, 0.0, kPi / 3});
  CHECK(c.x1 == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(c.x3 == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("inverse map conventions") {
  SphericalPoint p = to_spherical(CartesianVec{0, 0, 3});
  CHECK(p.rho == doctest::Approx(3.0));
  CHECK(p.theta == 0.0);  // axis convention
  CHECK(p.phi == doctest::Approx(0.0));

  SphericalPoint q = to_spherical(CartesianVec{1, 1, 0});
  CHECK(q.rho == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(q.theta == doctest::Approx(kPi / 4).epsilon(1e-14));
  CHECK(q.phi == doctest::Approx(kPi / 2).epsilon(1e-14));

  CHECK_THROWS_AS(to_spherical(CartesianVec{0, 0, 0}), ZeroVector);
}

TEST_CASE("round trip preserves coordinates off the axis") {
  for (const SphericalPoint& p : halton_points(200, 0.1, 10.0, 0.05, kPi - 0.05)) {
    const SphericalPoint q = to_spherical(to_cartesian(p));
    CHECK(std::abs(q.rho - p.rho) <= 1e-12 * p.rho);
    CHECK(std::abs(q.theta - p.theta) <= 1e-12 * (1.0 + p.theta));
    CHECK(std::abs(q.phi - p.phi) <= 1e-12);
  }
}

TEST_CASE("basis vectors: equatorial point and pole limit") {
  FrameBasis b = basis_vectors(SphericalPoint{1.0, 0.0, kPi / 2});
  CHECK((b.e_rho - CartesianVec{1, 0, 0}).norm() < 1e-15);
  CHECK((b.e_theta - CartesianVec{0, 1, 0}).norm() < 1e-15);
  CHECK((b.e_phi - CartesianVec{0, 0, -1}).norm() < 1e-15);

  // Limit along the theta = 0 meridian at the north pole:
  // e_phi = e_theta x e_rho = (0,1,0) x (0,0,1) = (1,0,0).
  FrameBasis p = basis_vectors(SphericalPoint{5.0, 0.0, 0.0});
  CHECK((p.e_rho - CartesianVec{0, 0, 1}).norm() < 1e-15);
  CHECK((p.e_theta - CartesianVec{0, 1, 0}).norm() < 1e-15);
  CHECK((p.e_phi - CartesianVec{1, 0, 0}).norm() < 1e-15);
}

TEST_CASE("basis vectors are an orthonormal right-handed frame") {
  for (const SphericalPoint& p : halton_points(100, 0.2, 5.0, 0.0, kPi)) {
    const FrameBasis b = basis_vectors(p);
    CHECK(std::abs(b.e_rho.norm() - 1.0) < 1e-12);
    CHECK(std::abs(b.e_theta.norm() - 1.0) < 1e-12);
    CHECK(std::abs(b.e_phi.norm() - 1.0) < 1e-12);
    CHECK(std::abs(b.e_rho.dot(b.e_theta)) < 1e-12);
    CHECK(std::abs(b.e_rho.dot(b.e_phi)) < 1e-12);
    CHECK(std::abs(b.e_theta.dot(b.e_phi)) < 1e-12);
    CHECK((b.e_theta.cross(b.e_rho) - b.e_phi).norm() < 1e-12);
  }
}

TEST_CASE("connection table: frame vector derivatives") {
  // Fields returning a constant frame index.
  SphericalField e_rho_field;
  e_rho_field.value = [](const SphericalPoint&) { return SphericalVec{1, 0, 0}; };
  SphericalField e_theta_field;
  e_theta_field.value = [](const SphericalPoint&) { return SphericalVec{0, 1, 0}; };

  // grad_{e_phi} e_rho = (1/rho) e_phi at rho = 2
  SphericalVec d1 = covariant_derivative(e_rho_field, FrameDirection::e_phi,
                                         SphericalPoint{2.0, 0.3, 1.1});
  CHECK(std::abs(d1.v_rho) < 1e-14);
  CHECK(std::abs(d1.v_theta) < 1e-14);
  CHECK(d1.v_phi == doctest::Approx(0.5).epsilon(1e-12));

  // grad_{e_theta} e_theta = -(1/rho) e_rho - (cot/rho) e_phi at rho=1, phi=pi/4
  SphericalVec d2 = covariant_derivative(e_theta_field, FrameDirection::e_theta,
                                         SphericalPoint{1.0, 0.7, kPi / 4});
  CHECK(d2.v_rho == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(d2.v_theta) < 1e-14);
  CHECK(d2.v_phi == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("radial derivative of a rho-independent field vanishes") {
  SphericalField f;
  f.value = [](const SphericalPoint& p) {
    return SphericalVec{std::sin(p.phi), std::cos(p.phi), std::sin(2.0 * p.phi)};
  };
  const SphericalVec d =
      covariant_derivative(f, FrameDirection::e_rho, SphericalPoint{1.7, 0.4, 1.2});
  CHECK(d.norm() < 1e-9);  // finite-difference fallback
}

TEST_CASE("e_theta derivative refuses the axis") {
  SphericalField f = smooth_field();
  CHECK_THROWS_AS(covariant_derivative(f, FrameDirection::e_theta, SphericalPoint{1.0, 0.0, 0.0}),
                  AxisSingularity);
  CHECK_THROWS_AS(covariant_derivative(f, FrameDirection::e_theta, SphericalPoint{1.0, 0.0, kPi}),
                  AxisSingularity);
  CHECK_NOTHROW(covariant_derivative(f, FrameDirection::e_phi, SphericalPoint{1.0, 0.0, kPi}));
}

TEST_CASE("covariant derivative matches the Cartesian directional derivative at O(h^2)") {
  const SphericalField f = smooth_field();
  const FrameDirection dirs[3] = {FrameDirection::e_rho, FrameDirection::e_theta,
                                  FrameDirection::e_phi};
  for (const SphericalPoint& p : halton_points(30, 0.5, 3.0, 0.2, kPi - 0.2)) {
    const CartesianVec x = to_cartesian(p);
    const FrameBasis b = basis_vectors(p);
    const CartesianVec es[3] = {b.e_rho, b.e_theta, b.e_phi};
    for (int d = 0; d < 3; ++d) {
      const CartesianVec have = to_cartesian(covariant_derivative(f, dirs[d], p), p);
      double err[2];
      for (int k = 0; k < 2; ++k) {
        const double h = k == 0 ? 2e-4 : 1e-4;
        const CartesianVec want =
            (cartesian_rep(f, x + es[d] * h) - cartesian_rep(f, x - es[d] * h)) *
            (1.0 / (2.0 * h));
        err[k] = (have - want).norm();
      }
      CHECK(err[1] < 1e-6);
      if (err[1] > 1e-11)  // above the rounding floor
        CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.3));
    }
  }
}

TEST_CASE("metric compatibility of the connection") {
  const SphericalField y1 = smooth_field();
  SphericalField y2;
  y2.value = [](const SphericalPoint& p) {
    return SphericalVec{0.3 * std::cos(p.phi), 0.2 * std::sin(p.phi) * std::sin(p.phi),
                        0.1 + 0.1 * std::cos(p.phi)};
  };
  const FrameDirection dirs[3] = {FrameDirection::e_rho, FrameDirection::e_theta,
                                  FrameDirection::e_phi};
  for (const SphericalPoint& p : halton_points(20, 0.5, 2.5, 0.3, kPi - 0.3)) {
    const CartesianVec x = to_cartesian(p);
    const FrameBasis b = basis_vectors(p);
    const CartesianVec es[3] = {b.e_rho, b.e_theta, b.e_phi};
    auto inner = [&](const CartesianVec& q) {
      return cartesian_rep(y1, q).dot(cartesian_rep(y2, q));
    };
    for (int d = 0; d < 3; ++d) {
      const SphericalVec dy1 = covariant_derivative(y1, dirs[d], p);
      const SphericalVec dy2 = covariant_derivative(y2, dirs[d], p);
      const SphericalVec v1 = y1.value(p), v2 = y2.value(p);
      const double rhs = dy1.v_rho * v2.v_rho + dy1.v_theta * v2.v_theta + dy1.v_phi * v2.v_phi +
                         v1.v_rho * dy2.v_rho + v1.v_theta * dy2.v_theta + v1.v_phi * dy2.v_phi;
      double err[2];
      for (int k = 0; k < 2; ++k) {
        const double h = k == 0 ? 2e-4 : 1e-4;
        const double lhs = (inner(x + es[d] * h) - inner(x - es[d] * h)) / (2.0 * h);
        err[k] = std::abs(lhs - rhs);
      }
      CHECK(err[1] < 1e-6);
      if (err[1] > 1e-11) CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.3));
    }
  }
}

TEST_CASE("finite-difference fallback agrees with analytic partials") {
  const SphericalField full = smooth_field();
  SphericalField bare;
  bare.value = full.value;  // no partials supplied
  for (const SphericalPoint& p : halton_points(25, 0.5, 3.0, 0.3, kPi - 0.3)) {
    for (FrameDirection d :
         {FrameDirection::e_rho, FrameDirection::e_theta, FrameDirection::e_phi}) {
      const SphericalVec a = covariant_derivative(full, d, p);
      const SphericalVec b = covariant_derivative(bare, d, p);
      CHECK((a - b).norm() < 1e-8);
    }
  }
}

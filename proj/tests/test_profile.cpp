#include "ssmhd/profile.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ssmhd/landau.hpp"

using namespace ssmhd;

TEST_CASE("not-a-knot spline reproduces cubics exactly") {
  auto poly = [](double x) { return 2.0 - x + 0.5 * x * x - 0.25 * x * x * x; };
  auto d1 = [](double x) { return -1.0 + x - 0.75 * x * x; };
  auto d2 = [](double x) { return 1.0 - 1.5 * x; };
  std::vector<double> xs, ys;
  for (int i = 0; i <= 12; ++i) {
    xs.push_back(0.1 * i);
    ys.push_back(poly(xs.back()));
  }
  CubicSpline sp(xs, ys);
  for (double x : {0.03, 0.51, 0.77, 1.13}) {
    CHECK(sp.value(x) == doctest::Approx(poly(x)).epsilon(1e-13));
    CHECK(sp.deriv(x) == doctest::Approx(d1(x)).epsilon(1e-12));
    CHECK(sp.deriv2(x) == doctest::Approx(d2(x)).epsilon(1e-11));
  }
}

TEST_CASE("spline second derivative converges at O(h^2)") {
  double err[2];
  for (int k = 0; k < 2; ++k) {
    const int n = k == 0 ? 100 : 200;
    std::vector<double> xs(n + 1), ys(n + 1);
    for (int i = 0; i <= n; ++i) {
      xs[i] = kPi * i / n;
      ys[i] = std::sin(xs[i]);
    }
    CubicSpline sp(xs, ys);
    // interior region: the not-a-knot end intervals converge more slowly
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double x = kPi * (0.1 + 0.8 * (i + 0.5) / 500);
      worst = std::max(worst, std::abs(sp.deriv2(x) + std::sin(x)));
    }
    err[k] = worst;
  }
  CHECK(err[0] / err[1] > 3.0);  // order ~2 under halving
  CHECK(err[1] < 1e-3);
}

TEST_CASE("spline rejects degenerate input") {
  CHECK_THROWS_AS(CubicSpline({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(CubicSpline({0.0, 1.0, 1.0, 2.0}, {0.0, 1.0, 2.0, 3.0}), DomainError);
}

TEST_CASE("sampled profile tracks the generating closed form") {
  const Profile ref = landau_profiles(LandauParam(2.0));
  const int n = 400;
  std::vector<double> phi(n + 1), f(n + 1), g(n + 1), h(n + 1), B(n + 1), P(n + 1);
  for (int i = 0; i <= n; ++i) {
    phi[i] = 1e-3 + (kPi - 2e-3) * i / n;
    f[i] = ref.f(phi[i]);
    g[i] = ref.g(phi[i]);
    h[i] = ref.h(phi[i]);
    B[i] = ref.B(phi[i]);
    P[i] = ref.P(phi[i]);
  }
  const Profile sp = Profile::from_samples(phi, f, g, h, B, P);
  for (int i = 0; i < 100; ++i) {
    const double x = 0.01 + (kPi - 0.02) * (i + 0.37) / 100;
    CHECK(std::abs(sp.f(x) - ref.f(x)) < 1e-8);
    CHECK(std::abs(sp.g(x) - ref.g(x)) < 1e-8);
    CHECK(std::abs(sp.f.deriv(x) - ref.f.deriv(x)) < 1e-6);
    CHECK(std::abs(sp.f.deriv2(x) - ref.f.deriv2(x)) < 1e-3);
  }
}

TEST_CASE("analytic profile derivatives agree with central differences") {
  const Profile pr = landau_profiles(LandauParam(-3.0));
  const double h = 1e-5;
  for (int i = 1; i < 40; ++i) {
    const double phi = kPi * i / 40.0;
    const double fd1 = (pr.f(phi + h) - pr.f(phi - h)) / (2.0 * h);
    const double fd2 = (pr.f(phi + h) - 2.0 * pr.f(phi) + pr.f(phi - h)) / (h * h);
    CHECK(pr.f.deriv(phi) == doctest::Approx(fd1).epsilon(1e-8));
    CHECK(pr.f.deriv2(phi) == doctest::Approx(fd2).epsilon(1e-4));
    const double gd1 = (pr.g(phi + h) - pr.g(phi - h)) / (2.0 * h);
    CHECK(pr.g.deriv(phi) == doctest::Approx(gd1).epsilon(1e-8));
    const double Pd1 = (pr.P(phi + h) - pr.P(phi - h)) / (2.0 * h);
    CHECK(pr.P.deriv(phi) == doctest::Approx(Pd1).epsilon(1e-8));
  }
}

TEST_CASE("zero and constant angular functions") {
  const AngularFn z = AngularFn::zero();
  CHECK(z(0.7) == 0.0);
  CHECK(z.deriv(0.7) == 0.0);
  const AngularFn c = AngularFn::constant(2.5);
  CHECK(c(1.3) == 2.5);
  CHECK(c.deriv2(1.3) == 0.0);
}

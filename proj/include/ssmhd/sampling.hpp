#pragma once

#include <cstddef>
#include <vector>

#include "ssmhd/geometry.hpp"

namespace ssmhd {

/// Van der Corput radical inverse, the 1-D Halton sequence.
inline double halton(std::size_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index + 1;  // skip the 0 term
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

/// Quasi-random off-axis points: rho in [rho_lo, rho_hi], theta in [0, 2 pi),
/// phi in [phi_lo, phi_hi], from Halton bases 2, 3, 5.
inline std::vector<SphericalPoint> halton_points(std::size_t n, double rho_lo, double rho_hi,
                                                 double phi_lo, double phi_hi) {
  std::vector<SphericalPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SphericalPoint p;
    p.rho = rho_lo + (rho_hi - rho_lo) * halton(i, 2);
    p.theta = 2.0 * kPi * halton(i, 3);
    p.phi = phi_lo + (phi_hi - phi_lo) * halton(i, 5);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace ssmhd

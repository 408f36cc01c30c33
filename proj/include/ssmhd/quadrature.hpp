#pragma once

#include <vector>

namespace ssmhd {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, nodes ascending; exact for polynomials of degree 2n-1.
GaussLegendre gauss_legendre(int n);

}  // namespace ssmhd

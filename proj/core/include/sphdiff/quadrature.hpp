#pragma once

#include <vector>

namespace sphdiff {

/// Gauss-Legendre rule on [-1, 1]: exact for polynomials of degree <= 2n-1.
struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // matching, sum to 2
};

GaussLegendreRule gauss_legendre(int n);

}  // namespace sphdiff

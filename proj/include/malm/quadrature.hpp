#pragma once

#include "malm/problem.hpp"

namespace malm {

/// Gauss-Legendre rule on the reference element [-1, 1]; exact for
/// polynomials of degree <= 2q - 1. Nodes symmetric about 0, weights
/// positive and summing to the element length 2.
struct QuadratureRule {
  Vector nodes;
  Vector weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Nodes are the roots of the degree-q Legendre polynomial, computed by
/// Newton iteration from the Chebyshev initial guess; weights by
/// 2 / ((1 - t^2) P_q'(t)^2).
QuadratureRule gauss_legendre(int q);

}  // namespace malm

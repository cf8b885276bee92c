#include "malm/quadrature.hpp"

#include <cmath>

namespace malm {

namespace {

// P_q(t) and P_q'(t) by the three-term recurrence.
std::pair<double, double> legendre(int q, double t) {
  double p0 = 1.0, p1 = t;
  for (int k = 2; k <= q; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = q * (t * p1 - p0) / (t * t - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int q) {
  if (q < 1 || q > 64) throw std::invalid_argument("gauss_legendre: q must be in [1, 64]");

  QuadratureRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);

  if (q == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  for (int i = 0; i < q; ++i) {
    // Chebyshev guess, indexed so nodes come out ascending
    double t = std::cos(M_PI * (q - i - 0.25) / (q + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      std::tie(p, dp) = legendre(q, t);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(p) <= 1e-15 || std::abs(dt) <= 1e-16) break;
    }
    std::tie(p, dp) = legendre(q, t);
    rule.nodes[i] = t;
    rule.weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }

  // enforce exact symmetry about the midpoint
  for (int i = 0; i < q / 2; ++i) {
    const int j = q - 1 - i;
    const double node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -node;
    rule.nodes[j] = node;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

}  // namespace malm

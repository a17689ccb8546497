#include "sacns/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sacns {

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  const int n = order;
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // Roots of P_n on [-1,1] are symmetric; solve for the upper half.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    // Map [-1,1] -> (0,1); x is descending in i, so fill from both ends.
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

GaussLegendreRule composite_gauss_legendre(int order, int panels) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be >= 1");
  const GaussLegendreRule base = gauss_legendre(order);
  GaussLegendreRule rule;
  rule.nodes.reserve(static_cast<size_t>(order) * panels);
  rule.weights.reserve(static_cast<size_t>(order) * panels);
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    for (int q = 0; q < order; ++q) {
      rule.nodes.push_back((p + base.nodes[q]) * h);
      rule.weights.push_back(base.weights[q] * h);
    }
  }
  return rule;
}

}  // namespace sacns

#pragma once

#include <vector>

namespace sacns {

/// One-dimensional Gauss-Legendre rule mapped to the unit interval (0,1).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Nodes by Newton iteration on the Legendre three-term recurrence.
/// Nodes are returned in increasing order; weights sum to 1.
GaussLegendreRule gauss_legendre(int order);

/// `panels` equal sub-intervals of (0,1), each carrying a `order`-point rule.
/// Used for integrands with kinks (absolute values), where a single high
/// order rule converges only algebraically.
GaussLegendreRule composite_gauss_legendre(int order, int panels);

/// Default quadrature order for fields with mode cutoff N.
constexpr int default_quad_order(int n_modes) { return 4 * n_modes + 8; }

}  // namespace sacns

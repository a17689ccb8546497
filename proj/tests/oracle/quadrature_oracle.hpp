#pragma once

// Brute-force reference integrals for tests. Depends only on the field
// containers: no spectral grid, no library quadrature, no sine tables.

#include "sacns/fields.hpp"

#include <array>
#include <functional>
#include <vector>

namespace sacns::oracle {

/// Gauss-Legendre rule on (0,1) from the eigen-decomposition of the Jacobi
/// matrix (Golub-Welsch).
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

QuadRule golub_welsch(int order);

/// Tensor-product sum of f over (0,1)^2.
double integrate(const std::function<double(double, double)>& f, const QuadRule& rule);

/// Pointwise value and gradient, by direct summation of the modes.
struct PointValue {
  std::array<double, 2> u{};
  std::array<std::array<double, 2>, 2> grad{};  // grad[d][i] = d u_d / d x_i
};

PointValue evaluate(const VelocityField& u, double x, double y);

double l2_norm(const VelocityField& u, const QuadRule& rule);
/// (integral of |grad u|^2)^(1/2)
double h10_norm(const VelocityField& u, const QuadRule& rule);
double l4_norm(const VelocityField& u, const QuadRule& rule);
double inner(const VelocityField& u, const VelocityField& v, const QuadRule& rule);
/// integral of grad u : grad v
double dirichlet_form(const VelocityField& u, const VelocityField& v, const QuadRule& rule);

/// 1/2 sum_ij integral of [u_i d_i v_j w_j - u_i d_i w_j v_j]
double trilinear(const VelocityField& u, const VelocityField& v, const VelocityField& w,
                 const QuadRule& rule);
/// integral of (u . grad) v . w
double convection(const VelocityField& u, const VelocityField& v, const VelocityField& w,
                  const QuadRule& rule);
/// integral of (Div u) v . w
double divergence_weighted(const VelocityField& u, const VelocityField& v,
                           const VelocityField& w, const QuadRule& rule);

/// integral of (Div u) n_a n_b cos(a pi x) cos(b pi y), n_0 = 1, n_a = sqrt 2.
double divergence_moment(const VelocityField& u, int a, int b, const QuadRule& rule);

}  // namespace sacns::oracle

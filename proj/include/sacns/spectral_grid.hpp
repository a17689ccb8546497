#pragma once

#include "sacns/fields.hpp"
#include "sacns/quadrature.hpp"

#include <Eigen/Dense>

#include <array>

namespace sacns {

/// Values and first derivatives of a velocity field on the tensor grid.
/// Matrices are indexed (x node, y node).
struct GridSample {
  std::array<Eigen::MatrixXd, 2> value;
  /// grad[d][i] = d u_d / d x_i
  std::array<std::array<Eigen::MatrixXd, 2>, 2> grad;
  bool has_gradient = false;
};

/// Tensor Gauss-Legendre collocation grid for fields with cutoff N.
/// Synthesis and testing are separable: each is two small matrix products
/// against the 1-D sine/cosine tables.
class SpectralGrid {
 public:
  SpectralGrid(int n_modes, int quad_order);
  SpectralGrid(int n_modes, GaussLegendreRule rule);

  int n_modes() const { return n_modes_; }
  int order() const { return rule_.order(); }
  const GaussLegendreRule& rule() const { return rule_; }

  GridSample sample(const VelocityField& u, bool with_gradient = true) const;

  /// Tensor quadrature of pointwise values.
  double integrate(const Eigen::MatrixXd& f) const;

  /// N x N matrices of integrals of F against 2 sin(j pi x) sin(k pi y),
  /// and against its x- and y-derivatives.
  Eigen::MatrixXd test_value(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd test_dx(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd test_dy(const Eigen::MatrixXd& f) const;

 private:
  void build_tables();

  int n_modes_;
  GaussLegendreRule rule_;
  Eigen::VectorXd w_;
  Eigen::MatrixXd sin_;   // Q x N, sin(j pi x_q)
  Eigen::MatrixXd cos_;   // Q x N, cos(j pi x_q)
  Eigen::MatrixXd wsin_;  // diag(w) sin_
  Eigen::MatrixXd wcos_;
  Eigen::VectorXd freq_;  // j pi
};

/// (integral of |u(x)|^4)^(1/4), |.| the Euclidean length of the 2-vector.
double l4_norm(const SpectralGrid& grid, const VelocityField& u);
double l4_norm(const VelocityField& u, int quad_order);

/// Same quantity from an existing sample.
double l4_norm(const SpectralGrid& grid, const GridSample& s);

}  // namespace sacns

#include "sacns/operators.hpp"

#include "sacns/errors.hpp"

#include <cmath>
#include <numbers>

namespace sacns {
namespace {

using Array = Eigen::ArrayXXd;

// sum_i u_i d_i v_d, pointwise
Array advect(const GridSample& u, const GridSample& v, int d) {
  return u.value[0].array() * v.grad[d][0].array() + u.value[1].array() * v.grad[d][1].array();
}

Array divergence_values(const GridSample& u) {
  return u.grad[0][0].array() + u.grad[1][1].array();
}

double l1_integral(const SpectralGrid& grid, const Array& f) {
  return grid.integrate(f.abs().matrix());
}

}  // namespace

DualVector stokes_apply(const VelocityField& u, double nu) {
  const int n = u.n_modes;
  DualVector out{Eigen::VectorXd(u.coeffs.size())};
  for (int s = 0; s < u.coeffs.size(); ++s) {
    const int rem = s % (n * n);
    const int j = rem / n + 1;
    const int k = rem % n + 1;
    out.pairings[s] = nu * std::numbers::pi * std::numbers::pi * (j * j + k * k) * u.coeffs[s];
  }
  return out;
}

double convection_pairing(const SpectralGrid& grid, const VelocityField& u, const VelocityField& v,
                          const VelocityField& w) {
  const GridSample su = grid.sample(u, false);
  const GridSample sv = grid.sample(v, true);
  const GridSample sw = grid.sample(w, false);
  const Array f = advect(su, sv, 0) * sw.value[0].array() + advect(su, sv, 1) * sw.value[1].array();
  return grid.integrate(f.matrix());
}

double divergence_weighted_pairing(const SpectralGrid& grid, const VelocityField& u,
                                   const VelocityField& v, const VelocityField& w) {
  const GridSample su = grid.sample(u, true);
  const GridSample sv = grid.sample(v, false);
  const GridSample sw = grid.sample(w, false);
  const Array f = divergence_values(su) * (sv.value[0].array() * sw.value[0].array() +
                                           sv.value[1].array() * sw.value[1].array());
  return grid.integrate(f.matrix());
}

double trilinear_bhat(const SpectralGrid& grid, const VelocityField& u, const VelocityField& v,
                      const VelocityField& w) {
  require_same_shape(u, v);
  require_same_shape(u, w);
  const GridSample su = grid.sample(u, false);
  const GridSample sv = grid.sample(v, true);
  const GridSample sw = grid.sample(w, true);
  Array f = Array::Zero(grid.order(), grid.order());
  for (int d = 0; d < 2; ++d) {
    f += advect(su, sv, d) * sw.value[d].array() - advect(su, sw, d) * sv.value[d].array();
  }
  return 0.5 * grid.integrate(f.matrix());
}

DualVector bhat_operator(const SpectralGrid& grid, const GridSample& s) {
  const int n = grid.n_modes();
  DualVector out{Eigen::VectorXd(velocity_dim(n))};
  // b(u,u,phi e_d) = 1/2 [ int (u.grad u_d) phi - int u_d (u . grad phi) ]
  for (int d = 0; d < 2; ++d) {
    const Eigen::MatrixXd adv = advect(s, s, d).matrix();
    const Eigen::MatrixXd fx = (s.value[d].array() * s.value[0].array()).matrix();
    const Eigen::MatrixXd fy = (s.value[d].array() * s.value[1].array()).matrix();
    const Eigen::MatrixXd t = 0.5 * (grid.test_value(adv) - grid.test_dx(fx) - grid.test_dy(fy));
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) out.pairings[d * n * n + j * n + k] = t(j, k);
    }
  }
  return out;
}

DualVector bhat_operator(const SpectralGrid& grid, const VelocityField& u) {
  return bhat_operator(grid, grid.sample(u, true));
}

std::array<InequalityCheck, 2> check_ladyzhenskaya(const SpectralGrid& grid,
                                                   const VelocityField& phi) {
  const GridSample s = grid.sample(phi, true);
  std::array<InequalityCheck, 2> out;
  for (int d = 0; d < 2; ++d) {
    const Array v = s.value[d].array();
    const double l4 = grid.integrate((v * v * v * v).matrix());
    const double l2 = grid.integrate((v * v).matrix());
    const double h1 = grid.integrate(
        (s.grad[d][0].array().square() + s.grad[d][1].array().square()).matrix());
    out[d] = {l4, 2.0 * l2 * h1};
  }
  return out;
}

std::array<InequalityCheck, 2> check_product_bound(const SpectralGrid& grid,
                                                   const SpectralGrid& l1_grid,
                                                   const VelocityField& u) {
  const GridSample s = grid.sample(u, false);
  const GridSample c = l1_grid.sample(u, true);
  const double prod = grid.integrate((s.value[0].array().square() * s.value[1].array().square()).matrix());
  // ||u_d d_i u_d||_L1
  double l1[2][2];
  for (int d = 0; d < 2; ++d) {
    for (int i = 0; i < 2; ++i) l1[d][i] = l1_integral(l1_grid, c.value[d].array() * c.grad[d][i].array());
  }
  return {InequalityCheck{prod, l1[0][0] * l1[1][1]}, InequalityCheck{prod, l1[1][0] * l1[0][1]}};
}

InequalityCheck check_convection_bound(const SpectralGrid& grid, const VelocityField& u,
                                       const VelocityField& w) {
  const double lhs = std::abs(trilinear_bhat(grid, u, u, w));
  const double rhs = 2.0 * std::pow(h10_norm(u), 1.5) * std::sqrt(l2_norm(u)) * l4_norm(grid, w);
  return {lhs, rhs};
}

InequalityCheck check_difference_bound(const SpectralGrid& grid, const VelocityField& u,
                                       const VelocityField& v, double nu) {
  const VelocityField w = u - v;
  const double lhs = std::abs(bhat_operator(grid, u).apply(w) - bhat_operator(grid, v).apply(w));
  const double l4v = l4_norm(grid, v);
  const double l2w = l2_norm(w);
  const double rhs = 0.5 * nu * h10_norm_sq(w) +
                     27.0 / (2.0 * nu * nu * nu) * l2w * l2w * l4v * l4v * l4v * l4v;
  return {lhs, rhs};
}

MonotonicityReport monotonicity_margin(const SpectralGrid& grid, const VelocityField& u,
                                       const VelocityField& v, double nu, double r) {
  const VelocityField w = u - v;
  MonotonicityReport rep;
  rep.r = r;
  rep.in_ball = l4_norm(grid, v) <= r;
  rep.stokes_term = stokes_apply(w, nu).apply(w);
  rep.convection_term = bhat_operator(grid, u).apply(w) - bhat_operator(grid, v).apply(w);
  const double l2w = l2_norm(w);
  rep.ball_term = 27.0 * r * r * r * r / (2.0 * nu * nu * nu) * l2w * l2w;
  rep.rhs = 0.5 * nu * h10_norm_sq(w);
  rep.margin = rep.recomputed_margin();
  return rep;
}

double check_ibp_identity(const SpectralGrid& grid, const VelocityField& u, const VelocityField& v,
                          const VelocityField& w) {
  return convection_pairing(grid, u, v, w) + divergence_weighted_pairing(grid, u, w, v) +
         convection_pairing(grid, u, w, v);
}

}  // namespace sacns

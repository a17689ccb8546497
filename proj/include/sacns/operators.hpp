#pragma once

#include "sacns/fields.hpp"
#include "sacns/spectral_grid.hpp"

#include <array>

namespace sacns {

/// <-nu Laplace u, e_i> = nu pi^2 (j^2 + k^2) u_i.
DualVector stokes_apply(const VelocityField& u, double nu);

/// b(u,v,w) = 1/2 sum_ij int [u_i d_i v_j w_j - u_i d_i w_j v_j], by collocation.
double trilinear_bhat(const SpectralGrid& grid, const VelocityField& u, const VelocityField& v,
                      const VelocityField& w);

/// <(u . grad) v, w> and <(Div u) v, w> by collocation.
double convection_pairing(const SpectralGrid& grid, const VelocityField& u,
                          const VelocityField& v, const VelocityField& w);
double divergence_weighted_pairing(const SpectralGrid& grid, const VelocityField& u,
                                   const VelocityField& v, const VelocityField& w);

/// Pairings b(u,u,e_i) for all i from one sample of u.
DualVector bhat_operator(const SpectralGrid& grid, const VelocityField& u);
DualVector bhat_operator(const SpectralGrid& grid, const GridSample& s);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;

  double margin() const { return rhs - lhs; }
};

/// Per scalar component d: lhs = ||u_d||_L4^4, rhs = 2 |u_d|^2 ||grad u_d||^2.
std::array<InequalityCheck, 2> check_ladyzhenskaya(const SpectralGrid& grid,
                                                   const VelocityField& phi);

/// ||phi psi||^2 <= ||phi d1 phi||_L1 ||psi d2 psi||_L1 for (phi,psi) = (u1,u2)
/// and (u2,u1). `l1_grid` should be a composite rule: the L1 integrands have kinks.
std::array<InequalityCheck, 2> check_product_bound(const SpectralGrid& grid,
                                                   const SpectralGrid& l1_grid,
                                                   const VelocityField& u);

/// |b(u,u,w)| <= 2 ||u||^(3/2) |u|^(1/2) ||w||_L4.
InequalityCheck check_convection_bound(const SpectralGrid& grid, const VelocityField& u,
                                       const VelocityField& w);

/// |<B(u) - B(v), u - v>| <= nu/2 ||u-v||^2 + 27/(2 nu^3) |u-v|^2 ||v||_L4^4.
InequalityCheck check_difference_bound(const SpectralGrid& grid, const VelocityField& u,
                                       const VelocityField& v, double nu);

struct MonotonicityReport {
  double stokes_term = 0.0;     // <A w, w>
  double convection_term = 0.0; // <B(u) - B(v), w>
  double ball_term = 0.0;       // 27 r^4 / (2 nu^3) |w|^2
  double rhs = 0.0;             // nu/2 ||w||^2
  double margin = 0.0;
  double r = 0.0;
  bool in_ball = false;

  double recomputed_margin() const { return stokes_term + convection_term + ball_term - rhs; }
};

MonotonicityReport monotonicity_margin(const SpectralGrid& grid, const VelocityField& u,
                                       const VelocityField& v, double nu, double r);

/// <(u.grad)v, w> + <(Div u) w, v> + <(u.grad)w, v>; zero for fields in H1_0.
double check_ibp_identity(const SpectralGrid& grid, const VelocityField& u, const VelocityField& v,
                          const VelocityField& w);

}  // namespace sacns

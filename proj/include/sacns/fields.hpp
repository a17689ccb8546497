#pragma once

#include "sacns/spaces.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace sacns {

/// Coefficients over the orthonormal vector sine basis, slot order (d, j, k).
struct VelocityField {
  int n_modes = 0;
  Eigen::VectorXd coeffs;

  VelocityField() = default;
  explicit VelocityField(int n);
  VelocityField(int n, Eigen::VectorXd c);

  double& at(int d, int j, int k) { return coeffs[velocity_slot(n_modes, d, j, k)]; }
  double at(int d, int j, int k) const { return coeffs[velocity_slot(n_modes, d, j, k)]; }
};

/// Coefficients over the orthonormal cosine pressure basis chi_ab.
struct PressureField {
  int n_modes = 0;
  Eigen::VectorXd coeffs;

  PressureField() = default;
  explicit PressureField(int n);
  PressureField(int n, Eigen::VectorXd c);
};

/// Coefficients over the divergence-image basis psi (cos.sin block, then
/// sin.cos block). Carries Div u exactly; norms go through the Gram.
struct DivergenceField {
  int n_modes = 0;
  Eigen::VectorXd coeffs;

  DivergenceField() = default;
  explicit DivergenceField(int n);
};

/// Pairings <F, e_i> against every velocity basis function.
struct DualVector {
  Eigen::VectorXd pairings;

  double apply(const VelocityField& w) const;
};

VelocityField operator+(const VelocityField& a, const VelocityField& b);
VelocityField operator-(const VelocityField& a, const VelocityField& b);
VelocityField operator*(double s, const VelocityField& a);

double l2_norm(const VelocityField& u);
double h10_norm(const VelocityField& u);
double h10_norm_sq(const VelocityField& u);
double inner(const VelocityField& a, const VelocityField& b);

double l2_norm(const PressureField& p);
PressureField operator-(const PressureField& a, const PressureField& b);

/// L2 norm of an exact divergence, sqrt(c^T G c).
double l2_norm(const DivergenceField& q, const DivergenceBasis& basis);

/// Exact coefficient map: d/dx1 of (j,k,1) lands on cos.sin (j,k) with
/// factor j pi, d/dx2 of (j,k,2) on sin.cos (j,k) with factor k pi.
DivergenceField divergence(const VelocityField& u);

/// B u: the divergence tested against the pressure basis.
PressureField weak_divergence(const Spaces& spaces, const VelocityField& u);

/// <grad p, e_i> = -(p, Div e_i) for every i, i.e. -B^T p.
DualVector pressure_gradient_pairing(const Spaces& spaces, const PressureField& p);
double pressure_gradient_pairing(const Spaces& spaces, const PressureField& p, int slot);

/// <grad q, e_i> = -(q, Div e_i) for q in the divergence-image span, via the Gram.
DualVector pressure_gradient_pairing(const DivergenceBasis& basis, const DivergenceField& q);

using Point = std::array<double, 2>;

/// Pointwise evaluation (direct sum over modes).
std::vector<Point> synthesize(const VelocityField& u, const std::vector<Point>& points);

/// Zero-padding or truncation to cutoff n (the L2 projection between spans).
VelocityField resize_modes(const VelocityField& u, int n);

void require_same_shape(const VelocityField& a, const VelocityField& b);

}  // namespace sacns

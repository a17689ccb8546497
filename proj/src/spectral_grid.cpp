#include "sacns/spectral_grid.hpp"

#include "sacns/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sacns {
namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

RowMajorMap component(const VelocityField& u, int d) {
  const int n = u.n_modes;
  return RowMajorMap(u.coeffs.data() + d * n * n, n, n);
}

}  // namespace

SpectralGrid::SpectralGrid(int n_modes, int quad_order)
    : SpectralGrid(n_modes, gauss_legendre(quad_order)) {}

SpectralGrid::SpectralGrid(int n_modes, GaussLegendreRule rule)
    : n_modes_(n_modes), rule_(std::move(rule)) {
  if (n_modes < 1) throw ConfigError("spectral grid needs N >= 1");
  build_tables();
}

void SpectralGrid::build_tables() {
  const int q = rule_.order();
  const int n = n_modes_;
  w_ = Eigen::Map<const Eigen::VectorXd>(rule_.weights.data(), q);
  sin_.resize(q, n);
  cos_.resize(q, n);
  freq_.resize(n);
  for (int j = 0; j < n; ++j) freq_[j] = (j + 1) * std::numbers::pi;
  for (int a = 0; a < q; ++a) {
    for (int j = 0; j < n; ++j) {
      sin_(a, j) = std::sin(freq_[j] * rule_.nodes[a]);
      cos_(a, j) = std::cos(freq_[j] * rule_.nodes[a]);
    }
  }
  wsin_ = w_.asDiagonal() * sin_;
  wcos_ = w_.asDiagonal() * cos_;
}

GridSample SpectralGrid::sample(const VelocityField& u, bool with_gradient) const {
  if (u.n_modes != n_modes_) {
    throw StructuralError("grid built for N = " + std::to_string(n_modes_) + ", field has N = " +
                          std::to_string(u.n_modes));
  }
  GridSample s;
  s.has_gradient = with_gradient;
  for (int d = 0; d < 2; ++d) {
    const Eigen::MatrixXd c = component(u, d);
    const Eigen::MatrixXd cs = c * sin_.transpose();
    s.value[d] = 2.0 * sin_ * cs;
    if (with_gradient) {
      s.grad[d][0] = 2.0 * cos_ * (freq_.asDiagonal() * cs);
      s.grad[d][1] = 2.0 * sin_ * ((c * freq_.asDiagonal()) * cos_.transpose());
    }
  }
  return s;
}

double SpectralGrid::integrate(const Eigen::MatrixXd& f) const { return w_.dot(f * w_); }

Eigen::MatrixXd SpectralGrid::test_value(const Eigen::MatrixXd& f) const {
  return 2.0 * wsin_.transpose() * f * wsin_;
}

Eigen::MatrixXd SpectralGrid::test_dx(const Eigen::MatrixXd& f) const {
  return 2.0 * freq_.asDiagonal() * (wcos_.transpose() * f * wsin_);
}

Eigen::MatrixXd SpectralGrid::test_dy(const Eigen::MatrixXd& f) const {
  return 2.0 * (wsin_.transpose() * f * wcos_) * freq_.asDiagonal();
}

double l4_norm(const SpectralGrid& grid, const GridSample& s) {
  const Eigen::ArrayXXd sq = s.value[0].array().square() + s.value[1].array().square();
  const double q = grid.integrate((sq * sq).matrix());
  return std::pow(std::max(q, 0.0), 0.25);
}

double l4_norm(const SpectralGrid& grid, const VelocityField& u) {
  return l4_norm(grid, grid.sample(u, false));
}

double l4_norm(const VelocityField& u, int quad_order) {
  return l4_norm(SpectralGrid(u.n_modes, quad_order), u);
}

}  // namespace sacns

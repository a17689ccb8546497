#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <memory>
#include <mutex>

namespace sacns {

/// Velocity basis function e = 2 sin(j pi x1) sin(k pi x2) in component d.
struct VelocityIndex {
  int j = 1;
  int k = 1;
  int d = 1;
};

/// Divergence-image families: cos(j pi x1) sin(k pi x2) and sin(j pi x1) cos(k pi x2).
enum class PsiFamily { kCosSin = 0, kSinCos = 1 };

/// Divergence-image basis function psi = 2 cos.sin or 2 sin.cos.
struct PsiIndex {
  int j = 1;
  int k = 1;
  PsiFamily family = PsiFamily::kCosSin;
};

/// Pressure basis function chi = n_a n_b cos(a pi x1) cos(b pi x2),
/// n_0 = 1, n_a = sqrt(2); L2-orthonormal, (a,b) != (0,0).
struct PressureIndex {
  int a = 0;
  int b = 1;
};

inline constexpr int kDefaultMaxModes = 64;

/// Velocity slot in the (d, j, k) row-major enumeration.
constexpr int velocity_slot(int n_modes, int d, int j, int k) {
  return (d - 1) * n_modes * n_modes + (j - 1) * n_modes + (k - 1);
}
constexpr int velocity_dim(int n_modes) { return 2 * n_modes * n_modes; }
constexpr int pressure_dim(int n_modes) { return n_modes * n_modes - 1; }
constexpr int psi_dim(int n_modes) { return 2 * n_modes * n_modes; }

VelocityIndex velocity_index(int n_modes, int slot);
PsiIndex psi_index(int n_modes, int slot);
int psi_slot(int n_modes, PsiFamily family, int j, int k);
PressureIndex pressure_index(int n_modes, int slot);
int pressure_slot(int n_modes, int a, int b);

/// Integral over (0,1) of cos(a pi x) sin(b pi x), closed form.
double cos_sin_integral(int a, int b);

/// Gram matrix of the divergence-image basis. The two families are not
/// mutually orthogonal; within a family the functions are orthonormal.
/// The Gram becomes numerically singular for N >~ 12 (the families span
/// nearly the same space), so the Cholesky factor is only available when
/// the matrix is numerically positive definite.
class DivergenceBasis {
 public:
  explicit DivergenceBasis(int n_modes);

  int n_modes() const { return n_modes_; }
  int dim() const { return psi_dim(n_modes_); }
  const Eigen::MatrixXd& gram() const { return gram_; }

  bool positive_definite() const { return positive_definite_; }
  /// Lower-triangular L with L L^T = gram. Throws FactorizationError when
  /// the Gram is not numerically positive definite.
  const Eigen::MatrixXd& cholesky_factor() const;
  /// ||L L^T - G||_F / ||G||_F.
  double reconstruction_error() const;

 private:
  int n_modes_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd factor_;
  bool positive_definite_ = false;
};

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Discrete velocity and pressure spaces for mode cutoff N on the unit square.
///
/// Velocity: 2N^2 orthonormal vector sine modes (Dirichlet on the boundary).
/// Pressure: N^2 - 1 orthonormal cosine modes chi_ab, 0 <= a,b <= N-1.
/// The weak divergence B maps velocity coefficients to pressure coefficients,
/// B[r][i] = (Div e_i, chi_r); its kernel is the discretely solenoidal subspace.
///
/// Immutable after construction; the projector and the solenoidal basis are
/// built on first use under a once-flag and can be shared across threads.
class Spaces {
 public:
  explicit Spaces(int n_modes, int max_modes = kDefaultMaxModes);

  int n_modes() const { return n_modes_; }
  int velocity_dim() const { return sacns::velocity_dim(n_modes_); }
  int pressure_dim() const { return sacns::pressure_dim(n_modes_); }

  /// pi^2 (j^2 + k^2) per velocity slot: the diagonal H1_0 stiffness.
  const Eigen::VectorXd& stiffness() const { return stiffness_; }
  const SparseRowMatrix& weak_divergence() const { return weak_div_; }

  /// L2-orthogonal projector onto ker B (2N^2 x 2N^2).
  const Eigen::MatrixXd& leray_projector() const;
  /// Orthonormal columns spanning ker B.
  const Eigen::MatrixXd& solenoidal_basis() const;
  const DivergenceBasis& divergence_basis() const;

 private:
  void build_projection() const;

  int n_modes_;
  Eigen::VectorXd stiffness_;
  SparseRowMatrix weak_div_;

  mutable std::once_flag projection_once_;
  mutable Eigen::MatrixXd leray_;
  mutable Eigen::MatrixXd solenoidal_basis_;
  mutable std::once_flag psi_once_;
  mutable std::unique_ptr<DivergenceBasis> psi_;
};

/// Validates N (1 <= N <= max_modes, otherwise ConfigError) and builds the spaces.
std::shared_ptr<const Spaces> build_spaces(int n_modes, int max_modes = kDefaultMaxModes);

}  // namespace sacns

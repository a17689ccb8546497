#include "sacns/spaces.hpp"

#include "sacns/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sacns {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPseudoInverseThreshold = 1e-12;

double cosine_norm(int a) { return a == 0 ? 1.0 : std::numbers::sqrt2; }

}  // namespace

VelocityIndex velocity_index(int n_modes, int slot) {
  const int nn = n_modes * n_modes;
  const int d = slot / nn + 1;
  const int rem = slot % nn;
  return {rem / n_modes + 1, rem % n_modes + 1, d};
}

PsiIndex psi_index(int n_modes, int slot) {
  const int nn = n_modes * n_modes;
  const auto family = slot < nn ? PsiFamily::kCosSin : PsiFamily::kSinCos;
  const int rem = slot % nn;
  return {rem / n_modes + 1, rem % n_modes + 1, family};
}

int psi_slot(int n_modes, PsiFamily family, int j, int k) {
  return static_cast<int>(family) * n_modes * n_modes + (j - 1) * n_modes + (k - 1);
}

PressureIndex pressure_index(int n_modes, int slot) {
  const int flat = slot + 1;
  return {flat / n_modes, flat % n_modes};
}

int pressure_slot(int n_modes, int a, int b) { return a * n_modes + b - 1; }

double cos_sin_integral(int a, int b) {
  if (a == b || (a + b) % 2 == 0) return 0.0;
  return 2.0 * b / (kPi * (static_cast<double>(b) * b - static_cast<double>(a) * a));
}

// ---------------------------------------------------------------------------

DivergenceBasis::DivergenceBasis(int n_modes) : n_modes_(n_modes) {
  const int n = dim();
  const int nn = n_modes * n_modes;
  gram_ = Eigen::MatrixXd::Identity(n, n);
  // <2 cos(j x) sin(k y), 2 sin(j' x) cos(k' y)> = 4 C(j,j') C(k',k)
  for (int s = 0; s < nn; ++s) {
    const PsiIndex a = psi_index(n_modes, s);
    for (int t = 0; t < nn; ++t) {
      const PsiIndex b = psi_index(n_modes, nn + t);
      const double v = 4.0 * cos_sin_integral(a.j, b.j) * cos_sin_integral(b.k, a.k);
      gram_(s, nn + t) = v;
      gram_(nn + t, s) = v;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(gram_);
  if (llt.info() == Eigen::Success) {
    factor_ = llt.matrixL();
    const double rel = reconstruction_error();
    positive_definite_ = std::isfinite(rel) && rel <= 1e-12 &&
                         factor_.diagonal().minCoeff() > 0.0;
  }
}

const Eigen::MatrixXd& DivergenceBasis::cholesky_factor() const {
  if (!positive_definite_) {
    throw FactorizationError("divergence-image Gram is not numerically positive definite at N = " +
                             std::to_string(n_modes_));
  }
  return factor_;
}

double DivergenceBasis::reconstruction_error() const {
  if (factor_.size() == 0) return std::numeric_limits<double>::infinity();
  return (factor_ * factor_.transpose() - gram_).norm() / gram_.norm();
}

// ---------------------------------------------------------------------------

Spaces::Spaces(int n_modes, int max_modes) : n_modes_(n_modes) {
  if (n_modes < 1 || n_modes > max_modes) {
    throw ConfigError("n_modes must satisfy 1 <= N <= " + std::to_string(max_modes) + ", got " +
                      std::to_string(n_modes));
  }
  const int nv = velocity_dim();
  stiffness_.resize(nv);
  for (int s = 0; s < nv; ++s) {
    const VelocityIndex v = velocity_index(n_modes, s);
    stiffness_[s] = kPi * kPi * (v.j * v.j + v.k * v.k);
  }

  // (Div e_(1,j,k), chi_ab) = j pi n_a n_b C(b,k) delta_(a,j)
  // (Div e_(2,j,k), chi_ab) = k pi n_a n_b C(a,j) delta_(b,k)
  std::vector<Eigen::Triplet<double>> entries;
  for (int r = 0; r < pressure_dim(); ++r) {
    const PressureIndex q = pressure_index(n_modes, r);
    const double nab = cosine_norm(q.a) * cosine_norm(q.b);
    if (q.a >= 1) {
      for (int k = 1; k <= n_modes; ++k) {
        const double v = q.a * kPi * nab * cos_sin_integral(q.b, k);
        if (v != 0.0) entries.emplace_back(r, velocity_slot(n_modes, 1, q.a, k), v);
      }
    }
    if (q.b >= 1) {
      for (int j = 1; j <= n_modes; ++j) {
        const double v = q.b * kPi * nab * cos_sin_integral(q.a, j);
        if (v != 0.0) entries.emplace_back(r, velocity_slot(n_modes, 2, j, q.b), v);
      }
    }
  }
  weak_div_.resize(pressure_dim(), nv);
  weak_div_.setFromTriplets(entries.begin(), entries.end());
  weak_div_.makeCompressed();
}

void Spaces::build_projection() const {
  const int nv = velocity_dim();
  if (pressure_dim() == 0) {
    leray_ = Eigen::MatrixXd::Identity(nv, nv);
    solenoidal_basis_ = Eigen::MatrixXd::Identity(nv, nv);
    return;
  }
  const Eigen::MatrixXd dense = weak_div_;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = kPseudoInverseThreshold * sigma[0] * sigma[0];
  int rank = 0;
  while (rank < sigma.size() && sigma[rank] * sigma[rank] > cutoff) ++rank;
  const Eigen::MatrixXd& v = svd.matrixV();
  // u - B^T (B B^T)^+ B u = (I - V_r V_r^T) u
  leray_ = Eigen::MatrixXd::Identity(nv, nv) - v.leftCols(rank) * v.leftCols(rank).transpose();
  solenoidal_basis_ = v.rightCols(nv - rank);
}

const Eigen::MatrixXd& Spaces::leray_projector() const {
  std::call_once(projection_once_, [this] { build_projection(); });
  return leray_;
}

const Eigen::MatrixXd& Spaces::solenoidal_basis() const {
  std::call_once(projection_once_, [this] { build_projection(); });
  return solenoidal_basis_;
}

const DivergenceBasis& Spaces::divergence_basis() const {
  std::call_once(psi_once_, [this] { psi_ = std::make_unique<DivergenceBasis>(n_modes_); });
  return *psi_;
}

std::shared_ptr<const Spaces> build_spaces(int n_modes, int max_modes) {
  return std::make_shared<const Spaces>(n_modes, max_modes);
}

}  // namespace sacns

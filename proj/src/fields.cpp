#include "sacns/fields.hpp"

#include "sacns/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sacns {
namespace {

constexpr double kPi = std::numbers::pi;

void require_length(const Eigen::VectorXd& c, Eigen::Index n, const char* what) {
  if (c.size() != n) {
    throw StructuralError(std::string(what) + ": expected " + std::to_string(n) +
                          " coefficients, got " + std::to_string(c.size()));
  }
}

}  // namespace

VelocityField::VelocityField(int n) : n_modes(n), coeffs(Eigen::VectorXd::Zero(velocity_dim(n))) {}

VelocityField::VelocityField(int n, Eigen::VectorXd c) : n_modes(n), coeffs(std::move(c)) {
  require_length(coeffs, velocity_dim(n), "VelocityField");
}

PressureField::PressureField(int n) : n_modes(n), coeffs(Eigen::VectorXd::Zero(pressure_dim(n))) {}

PressureField::PressureField(int n, Eigen::VectorXd c) : n_modes(n), coeffs(std::move(c)) {
  require_length(coeffs, pressure_dim(n), "PressureField");
}

DivergenceField::DivergenceField(int n) : n_modes(n), coeffs(Eigen::VectorXd::Zero(psi_dim(n))) {}

double DualVector::apply(const VelocityField& w) const {
  require_length(w.coeffs, pairings.size(), "DualVector::apply");
  return pairings.dot(w.coeffs);
}

void require_same_shape(const VelocityField& a, const VelocityField& b) {
  if (a.n_modes != b.n_modes || a.coeffs.size() != b.coeffs.size()) {
    throw StructuralError("velocity fields with different mode cutoffs (" +
                          std::to_string(a.n_modes) + " vs " + std::to_string(b.n_modes) + ")");
  }
}

VelocityField operator+(const VelocityField& a, const VelocityField& b) {
  require_same_shape(a, b);
  return VelocityField(a.n_modes, a.coeffs + b.coeffs);
}

VelocityField operator-(const VelocityField& a, const VelocityField& b) {
  require_same_shape(a, b);
  return VelocityField(a.n_modes, a.coeffs - b.coeffs);
}

VelocityField operator*(double s, const VelocityField& a) {
  return VelocityField(a.n_modes, s * a.coeffs);
}

double l2_norm(const VelocityField& u) { return u.coeffs.norm(); }

double h10_norm_sq(const VelocityField& u) {
  const int n = u.n_modes;
  double acc = 0.0;
  for (int s = 0; s < u.coeffs.size(); ++s) {
    const int rem = s % (n * n);
    const int j = rem / n + 1;
    const int k = rem % n + 1;
    acc += kPi * kPi * (j * j + k * k) * u.coeffs[s] * u.coeffs[s];
  }
  return acc;
}

double h10_norm(const VelocityField& u) { return std::sqrt(h10_norm_sq(u)); }

double inner(const VelocityField& a, const VelocityField& b) {
  require_same_shape(a, b);
  return a.coeffs.dot(b.coeffs);
}

double l2_norm(const PressureField& p) { return p.coeffs.norm(); }

PressureField operator-(const PressureField& a, const PressureField& b) {
  if (a.n_modes != b.n_modes) throw StructuralError("pressure fields with different mode cutoffs");
  return PressureField(a.n_modes, a.coeffs - b.coeffs);
}

double l2_norm(const DivergenceField& q, const DivergenceBasis& basis) {
  if (q.n_modes != basis.n_modes()) throw StructuralError("divergence field / basis cutoff mismatch");
  const double sq = q.coeffs.dot(basis.gram() * q.coeffs);
  return std::sqrt(std::max(sq, 0.0));
}

DivergenceField divergence(const VelocityField& u) {
  const int n = u.n_modes;
  const int nn = n * n;
  DivergenceField q(n);
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const int s = (j - 1) * n + (k - 1);
      q.coeffs[s] = j * kPi * u.coeffs[s];
      q.coeffs[nn + s] = k * kPi * u.coeffs[nn + s];
    }
  }
  return q;
}

PressureField weak_divergence(const Spaces& spaces, const VelocityField& u) {
  if (u.n_modes != spaces.n_modes()) throw StructuralError("velocity field / spaces cutoff mismatch");
  return PressureField(u.n_modes, spaces.weak_divergence() * u.coeffs);
}

DualVector pressure_gradient_pairing(const Spaces& spaces, const PressureField& p) {
  if (p.n_modes != spaces.n_modes()) throw StructuralError("pressure field / spaces cutoff mismatch");
  return DualVector{-(spaces.weak_divergence().transpose() * p.coeffs)};
}

double pressure_gradient_pairing(const Spaces& spaces, const PressureField& p, int slot) {
  if (p.n_modes != spaces.n_modes()) throw StructuralError("pressure field / spaces cutoff mismatch");
  double acc = 0.0;
  const SparseRowMatrix& b = spaces.weak_divergence();
  for (int r = 0; r < b.outerSize(); ++r) {
    for (SparseRowMatrix::InnerIterator it(b, r); it; ++it) {
      if (it.col() == slot) acc += it.value() * p.coeffs[r];
    }
  }
  return -acc;
}

DualVector pressure_gradient_pairing(const DivergenceBasis& basis, const DivergenceField& q) {
  const int n = basis.n_modes();
  if (q.n_modes != n) throw StructuralError("divergence field / basis cutoff mismatch");
  const int nn = n * n;
  const Eigen::VectorXd gq = basis.gram() * q.coeffs;
  DualVector out{Eigen::VectorXd::Zero(velocity_dim(n))};
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const int s = (j - 1) * n + (k - 1);
      out.pairings[s] = -j * kPi * gq[s];
      out.pairings[nn + s] = -k * kPi * gq[nn + s];
    }
  }
  return out;
}

std::vector<Point> synthesize(const VelocityField& u, const std::vector<Point>& points) {
  const int n = u.n_modes;
  std::vector<Point> out;
  out.reserve(points.size());
  std::vector<double> sx(n), sy(n);
  for (const Point& x : points) {
    for (int m = 0; m < n; ++m) {
      sx[m] = std::sin((m + 1) * kPi * x[0]);
      sy[m] = std::sin((m + 1) * kPi * x[1]);
    }
    Point v{0.0, 0.0};
    for (int d = 0; d < 2; ++d) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) acc += u.coeffs[d * n * n + j * n + k] * sx[j] * sy[k];
      }
      v[d] = 2.0 * acc;
    }
    out.push_back(v);
  }
  return out;
}

VelocityField resize_modes(const VelocityField& u, int n) {
  VelocityField out(n);
  const int m = std::min(n, u.n_modes);
  for (int d = 1; d <= 2; ++d) {
    for (int j = 1; j <= m; ++j) {
      for (int k = 1; k <= m; ++k) out.at(d, j, k) = u.at(d, j, k);
    }
  }
  return out;
}

}  // namespace sacns

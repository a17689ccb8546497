#pragma once

#include "sacns/fields.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace sacns {

/// Time-invariant body force f.
struct DeterministicForce {
  VelocityField f;

  double l2_norm_sq() const { return f.coeffs.squaredNorm(); }
};

/// g_k = amplitude * e_(j,k,d)
struct ModeAmplitude {
  int j = 1;
  int k = 1;
  int d = 1;
  double amplitude = 0.0;
};

/// Finite family of additive noise modes g_1..g_K, stored as the columns of
/// a 2N^2 x K matrix, with the cached trace sum_k |g_k|^2.
class NoiseModel {
 public:
  NoiseModel() = default;
  NoiseModel(int n_modes, std::vector<VelocityField> modes);

  static NoiseModel from_amplitudes(int n_modes, const std::vector<ModeAmplitude>& modes);

  int n_modes() const { return n_modes_; }
  int size() const { return static_cast<int>(matrix_.cols()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  VelocityField mode(int k) const;
  double trace() const { return trace_; }

 private:
  int n_modes_ = 0;
  Eigen::MatrixXd matrix_;
  double trace_ = 0.0;
};

double trace_covariance(const NoiseModel& g);

/// Brownian increments over one step, regenerable from (seed, path, step).
struct WienerIncrement {
  Eigen::VectorXd dW;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
  std::uint64_t step = 0;
};

/// dW_k ~ Normal(0, dt), i.i.d.
/// With refinement r > 0 the increment is the sum of 2^r sub-increments
/// drawn at fine steps step * 2^r + i; runs at dt and dt/2 with refinements
/// r and r+1 then see the same Brownian path.
WienerIncrement sample_increment(const NoiseModel& g, double dt, std::uint64_t seed,
                                 std::uint64_t path, std::uint64_t step, int refinement = 0);

/// sum_k g_k dW_k
VelocityField noise_contribution(const NoiseModel& g, const WienerIncrement& inc);

/// Modes (j,k,d) with j,k in {1,2}, |g|^2 proportional to (j^2+k^2)^-2, scaled to `trace`.
std::vector<ModeAmplitude> default_noise_modes(double trace);

NoiseModel rescale_to_trace(const NoiseModel& g, double trace);

}  // namespace sacns

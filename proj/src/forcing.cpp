#include "sacns/forcing.hpp"

#include "sacns/errors.hpp"
#include "sacns/rng.hpp"

#include <cmath>
#include <string>

namespace sacns {

NoiseModel::NoiseModel(int n_modes, std::vector<VelocityField> modes) : n_modes_(n_modes) {
  if (static_cast<int>(modes.size()) > velocity_dim(n_modes)) {
    throw StructuralError("noise has more modes than the Galerkin space dimension");
  }
  matrix_ = Eigen::MatrixXd::Zero(velocity_dim(n_modes), static_cast<Eigen::Index>(modes.size()));
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (modes[k].n_modes != n_modes) throw StructuralError("noise mode has the wrong cutoff");
    matrix_.col(static_cast<Eigen::Index>(k)) = modes[k].coeffs;
  }
  trace_ = matrix_.squaredNorm();
}

NoiseModel NoiseModel::from_amplitudes(int n_modes, const std::vector<ModeAmplitude>& modes) {
  std::vector<VelocityField> fields;
  for (const ModeAmplitude& m : modes) {
    if (m.d < 1 || m.d > 2 || m.j < 1 || m.k < 1) {
      throw ConfigError("noise mode (" + std::to_string(m.j) + "," + std::to_string(m.k) + "," +
                        std::to_string(m.d) + ") is not a velocity mode");
    }
    if (m.j > n_modes || m.k > n_modes) continue;  // outside the Galerkin span
    VelocityField g(n_modes);
    g.at(m.d, m.j, m.k) = m.amplitude;
    fields.push_back(std::move(g));
  }
  return NoiseModel(n_modes, std::move(fields));
}

VelocityField NoiseModel::mode(int k) const { return VelocityField(n_modes_, matrix_.col(k)); }

double trace_covariance(const NoiseModel& g) { return g.trace(); }

WienerIncrement sample_increment(const NoiseModel& g, double dt, std::uint64_t seed,
                                 std::uint64_t path, std::uint64_t step, int refinement) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  WienerIncrement inc;
  inc.dt = dt;
  inc.seed = seed;
  inc.path = path;
  inc.step = step;
  inc.dW = Eigen::VectorXd::Zero(g.size());
  const std::uint64_t fine = std::uint64_t{1} << refinement;
  const double sd = std::sqrt(dt / static_cast<double>(fine));
  for (int k = 0; k < g.size(); ++k) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < fine; ++i) {
      acc += standard_normal({seed, Stream::kWiener, path, step * fine + i,
                              static_cast<std::uint64_t>(k)});
    }
    inc.dW[k] = sd * acc;
  }
  return inc;
}

VelocityField noise_contribution(const NoiseModel& g, const WienerIncrement& inc) {
  if (inc.dW.size() != g.size()) {
    throw StructuralError("increment has " + std::to_string(inc.dW.size()) +
                          " components, noise has " + std::to_string(g.size()) + " modes");
  }
  if (g.size() == 0) return VelocityField(g.n_modes());
  return VelocityField(g.n_modes(), g.matrix() * inc.dW);
}

std::vector<ModeAmplitude> default_noise_modes(double trace) {
  std::vector<ModeAmplitude> modes;
  double total = 0.0;
  for (int d = 1; d <= 2; ++d) {
    for (int j = 1; j <= 2; ++j) {
      for (int k = 1; k <= 2; ++k) {
        const double var = std::pow(static_cast<double>(j * j + k * k), -2.0);
        modes.push_back({j, k, d, std::sqrt(var)});
        total += var;
      }
    }
  }
  const double s = std::sqrt(trace / total);
  for (ModeAmplitude& m : modes) m.amplitude *= s;
  return modes;
}

NoiseModel rescale_to_trace(const NoiseModel& g, double trace) {
  if (g.trace() == 0.0) return g;
  const double s = std::sqrt(trace / g.trace());
  std::vector<VelocityField> modes;
  for (int k = 0; k < g.size(); ++k) modes.push_back(s * g.mode(k));
  return NoiseModel(g.n_modes(), std::move(modes));
}

}  // namespace sacns

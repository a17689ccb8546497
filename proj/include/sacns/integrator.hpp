#pragma once

#include "sacns/fields.hpp"
#include "sacns/forcing.hpp"
#include "sacns/spaces.hpp"
#include "sacns/spectral_grid.hpp"

#include <Eigen/Cholesky>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace sacns {

struct SolverConfig {
  double nu = 0.1;
  double eps = 0.1;
  double delta = 1.0;
  int n_modes = 8;
  double dt = 1e-3;
  double T = 0.5;
  double moment_p = 4.0;
  int quad_order = 0;  // 0: 4N + 8
  std::uint64_t seed = 42;
  double energy_cap = 1e12;
  int brownian_refinement = 0;
  int max_modes = kDefaultMaxModes;

  /// Throws ConfigError naming the field and the violated constraint.
  void validate() const;
  int steps() const;
  int effective_quad_order() const;
};

struct State {
  VelocityField u;
  PressureField p;
  double t = 0.0;
};

/// |u|^2 + eps |p|^2
double state_energy(const State& s, double eps);

/// Left-point (Ito) increments of the energy balance over one step.
struct EnergyLedgerEntry {
  double t = 0.0;               // end of the step
  double energy_before = 0.0;
  double energy = 0.0;
  double dissipation_increment = 0.0;  // 2 nu ||u_m||^2 dt
  double work_increment = 0.0;         // 2 (f, u_m) dt
  double ito_increment = 0.0;          // Tr(g^2) dt
  double martingale_increment = 0.0;   // 2 sum_k (g_k, u_m) dW_k
  double residual = 0.0;

  double recomputed_residual() const {
    return (energy - energy_before) + dissipation_increment - work_increment - ito_increment -
           martingale_increment;
  }
};

/// Per-step series; index 0 is the initial state.
struct PathRecord {
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
  std::vector<double> t;
  std::vector<double> l2_u;
  std::vector<double> h1_u;
  std::vector<double> l4_u;
  std::vector<double> l2_p;
  std::vector<double> l2_div_u;  // |B u|: the divergence tested against the pressure space
  std::vector<double> energy;
  std::vector<double> residual;
  std::vector<EnergyLedgerEntry> ledger;

  std::size_t size() const { return t.size(); }
};

struct ModeValue {
  int j = 1;
  int k = 1;
  int d = 1;
  double value = 0.0;
};

struct PressureModeValue {
  int a = 0;
  int b = 1;
  double value = 0.0;
};

/// Presets: zero, default (low-mode field with nonzero divergence),
/// solenoidal (default projected onto ker B), stokes1 (lowest discrete
/// Stokes eigenmode, unit norm), modes (explicit list only).
/// Explicit velocity/pressure lists are added to the preset.
struct InitialSpec {
  std::string preset = "default";
  std::vector<ModeValue> velocity;
  std::vector<PressureModeValue> pressure;
  double amplitude = 1.0;
};

/// L2 projection of the initial data onto the cutoff-N spaces.
State project_initial(const InitialSpec& spec, const Spaces& spaces);

/// Lowest eigenpair of the Stokes operator restricted to ker B.
std::pair<double, VelocityField> first_stokes_mode(const Spaces& spaces);

enum class Scheme {
  kArtificialCompressibility,  // eps p' + B u = 0, p eliminated implicitly
  kProjected,                  // u constrained to ker B (incompressible reference)
};

using StepObserver = std::function<void(int step, const State& state)>;

/// Semi-implicit Euler-Maruyama stepper.
///
/// (I + dt nu S + dt^2/eps B^T B) u+ = u - dt Bh(u) + dt B^T p + dt f + sum g_k dW_k
/// p+ = p - dt/eps B u+
///
/// Backward Euler on the Stokes and pressure coupling, explicit Bh. The
/// factorization is shared through a process-wide cache keyed on (N, nu, eps, dt).
class Integrator {
 public:
  Integrator(std::shared_ptr<const Spaces> spaces, SolverConfig cfg, DeterministicForce force,
             NoiseModel noise, Scheme scheme = Scheme::kArtificialCompressibility);

  const SolverConfig& config() const { return cfg_; }
  const Spaces& spaces() const { return *spaces_; }
  std::shared_ptr<const Spaces> spaces_ptr() const { return spaces_; }
  const SpectralGrid& grid() const { return *grid_; }
  const DeterministicForce& force() const { return force_; }
  const NoiseModel& noise() const { return noise_; }
  Scheme scheme() const { return scheme_; }

  /// Test hook: drop the nonlinear term.
  void set_nonlinear(bool enabled) { nonlinear_ = enabled; }
  bool nonlinear() const { return nonlinear_; }

  WienerIncrement increment(std::uint64_t path, std::uint64_t step) const;

  State step(const State& s, const WienerIncrement& inc, EnergyLedgerEntry* entry = nullptr) const;

  /// Throws DivergedPath when the energy leaves [0, energy_cap].
  PathRecord run_path(const State& initial, std::uint64_t path,
                      const StepObserver& observer = {}) const;

 private:
  State advance(const State& s, const GridSample& sample, const WienerIncrement& inc,
                EnergyLedgerEntry* entry) const;

  std::shared_ptr<const Spaces> spaces_;
  SolverConfig cfg_;
  DeterministicForce force_;
  NoiseModel noise_;
  Scheme scheme_;
  bool nonlinear_ = true;
  std::shared_ptr<const SpectralGrid> grid_;
  std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> factor_;
};

/// Residual magnitude of one run and the empirical order under dt-halving.
/// The order is the least-squares slope of log(rms residual) against log dt:
/// the maximum over n steps of a noisy residual grows like log n, which
/// biases a max-based slope low, while the per-step rms does not.
struct ResidualSummary {
  double max_abs = 0.0;
  double rms = 0.0;
  double slope = 0.0;
  bool slope_defined = false;
};

double max_abs_residual(const std::vector<EnergyLedgerEntry>& ledger);
double rms_residual(const std::vector<EnergyLedgerEntry>& ledger);

/// Least-squares slope of log(magnitude) against log(dt); undefined when
/// fewer than two points or any magnitude is zero.
ResidualSummary residual_order(const std::vector<double>& dts,
                               const std::vector<double>& magnitudes);

/// max_abs and rms describe runs[0]; the slope is taken over all runs.
ResidualSummary energy_residual(const std::vector<std::vector<EnergyLedgerEntry>>& runs,
                                const std::vector<double>& dts);

/// Number of cached factorizations (for tests).
std::size_t factorization_cache_size();

}  // namespace sacns

#pragma once

#include "sacns/diagnostics.hpp"
#include "sacns/forcing.hpp"
#include "sacns/integrator.hpp"

#include <memory>
#include <vector>

namespace sacns {

/// u - B^T (B B^T)^+ B u, i.e. the L2-orthogonal projection onto ker B.
VelocityField leray_project(const Spaces& spaces, const VelocityField& u);

/// Incompressible reference: the same step with u constrained to ker B;
/// force, nonlinearity and noise are projected implicitly.
Integrator make_reference_integrator(std::shared_ptr<const Spaces> spaces, const SolverConfig& cfg,
                                     const DeterministicForce& force, const NoiseModel& noise);

PathRecord run_incompressible_reference(std::shared_ptr<const Spaces> spaces,
                                        const SolverConfig& cfg, const DeterministicForce& force,
                                        const NoiseModel& noise, const State& initial,
                                        std::uint64_t path);

struct EpsSweepPlan {
  std::vector<double> eps_values{1e-1, 1e-2, 1e-3, 1e-4};
  SolverConfig shared;  // eps ignored
  DeterministicForce force;
  NoiseModel noise;
  InitialSpec initial;
  int paths = 50;
  int threads = 1;
  double max_diverged_fraction = 0.1;

  void validate() const;
};

struct EpsRow {
  double eps = 0.0;
  int used_paths = 0;
  int diverged = 0;
  double div_sq = 0.0;  // sup_t E|B u|^2
  double div_se = 0.0;
  double div_time = 0.0;
  double diff_sq = 0.0;  // sup_t E|u - u_ref|^2
  double diff_se = 0.0;
  double diff_time = 0.0;
  double pressure_energy = 0.0;  // E int_0^T eps |p|^2 dt
  double pressure_se = 0.0;
};

struct ConvergenceReport {
  std::vector<EpsRow> rows;
  int reference_diverged = 0;
  bool divergence_decreasing = true;
  bool difference_decreasing = true;
  bool pressure_bounded = true;
  bool divergence_budget_ok = true;
  double pressure_bound = 0.0;
  std::vector<double> divergence_rates;  // log-log slopes between consecutive eps
  std::vector<double> difference_rates;

  bool pass() const {
    return divergence_decreasing && difference_decreasing && pressure_bounded &&
           divergence_budget_ok;
  }
};

/// int_0^T e^(delta t) [E0 + int_0^t (|f|^2/delta + Tr) e^(-delta s) ds] dt,
/// an upper bound for E int eps |p|^2 dt from the energy estimate.
double pressure_energy_bound(double initial_energy, double force_sq, double trace, double delta,
                             double T);

ConvergenceReport epsilon_sweep(const EpsSweepPlan& plan, std::shared_ptr<const Spaces> spaces);

}  // namespace sacns

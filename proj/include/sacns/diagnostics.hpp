#pragma once

#include "sacns/integrator.hpp"

#include <cstdint>
#include <vector>

namespace sacns {

struct MomentConfig {
  double p = 4.0;
  double delta = 1.0;
  int paths = 200;
  double confidence_z = 3.0;

  void validate() const;
};

/// Cumulative trapezoid of p nu ||u||^2 |u|^(p-2) e^(-delta t) along a path;
/// p = 2 gives the dissipation integral of the energy estimate.
std::vector<double> weighted_dissipation(const PathRecord& rec, double nu, double delta, double p);

/// E0 + integral_0^t (|f|^2/delta + Tr) e^(-delta s) ds
double energy_bound_rhs(double initial_energy, double force_sq, double trace, double delta,
                        double t);

struct EnergyBoundReport {
  double delta = 0.0;
  int paths = 0;
  std::vector<double> t;
  std::vector<double> lhs;  // sample mean of E(t) e^(-delta t) + 2 nu int ||u||^2 e^(-delta s)
  std::vector<double> se;
  std::vector<double> rhs;
  double worst_margin = 0.0;  // min_t (rhs + z se - lhs)
  double worst_time = 0.0;
  double dissipation_at_T = 0.0;  // sample mean of the dissipation integral over [0, T]
  bool pass = false;
};

/// All paths must share the initial state, force and noise.
EnergyBoundReport mc_energy_bound(const std::vector<PathRecord>& paths, const SolverConfig& cfg,
                                  double force_sq, double trace, double delta, double z);

struct MomentBoundReport {
  double p = 0.0;
  double delta = 0.0;
  int paths = 0;
  double lhs = 0.0;  // E[ sup_t (|u|^p + eps |p|^p) e^(-delta t) + p nu int ||u||^2 |u|^(p-2) e^(-delta t) ]
  double se = 0.0;
  double initial = 0.0;     // |u0|^p + eps |p0|^p
  double rhs_integral = 0.0;  // int_0^T (|f|^p + Tr^(p/2)) e^(-delta t) dt
  double implied_c = 0.0;   // (lhs - initial) / rhs_integral
  bool defined = false;     // false when rhs_integral == 0
  double dissipation = 0.0; // sample mean of the weighted dissipation over [0, T]
  double sup_term = 0.0;    // sample mean of the sup term
};

MomentBoundReport mc_moment_bound(const std::vector<PathRecord>& paths, const SolverConfig& cfg,
                                  double force_norm, double trace, double p, double delta);

/// Per-path value of the moment functional (for sup-dominance checks).
double moment_functional(const PathRecord& rec, const SolverConfig& cfg, double p, double delta);

struct UniquenessReport {
  std::vector<double> t;
  std::vector<double> weight;          // r(t) = 27/nu^3 int_0^t ||u||_L4^4
  std::vector<double> difference;      // |u-v|^2 + eps |p-q|^2
  std::vector<double> weighted_diff;   // difference * exp(-r)
  double max_increase = 0.0;           // max_m (W_(m+1) - W_m), signed
  double tolerance = 0.0;              // c_check * dt * W(0)
  bool identical_zero = false;
  bool pass = false;
};

/// Both trajectories consume the same Wiener increments; the weight is
/// accumulated along the first.
UniquenessReport pathwise_uniqueness_check(const Integrator& integrator, const State& a,
                                           const State& b, std::uint64_t path, double c_check);

std::vector<double> divergence_norm_series(const PathRecord& rec);

struct SampleStats {
  double mean = 0.0;
  double se = 0.0;
};

SampleStats sample_stats(const std::vector<double>& x);

}  // namespace sacns

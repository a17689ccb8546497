#include "sacns/eps_limit.hpp"

#include "sacns/ensemble.hpp"
#include "sacns/errors.hpp"

#include <cmath>

namespace sacns {

VelocityField leray_project(const Spaces& spaces, const VelocityField& u) {
  if (u.n_modes != spaces.n_modes()) throw StructuralError("field / spaces cutoff mismatch");
  return VelocityField(u.n_modes, spaces.leray_projector() * u.coeffs);
}

Integrator make_reference_integrator(std::shared_ptr<const Spaces> spaces, const SolverConfig& cfg,
                                     const DeterministicForce& force, const NoiseModel& noise) {
  return Integrator(std::move(spaces), cfg, force, noise, Scheme::kProjected);
}

PathRecord run_incompressible_reference(std::shared_ptr<const Spaces> spaces,
                                        const SolverConfig& cfg, const DeterministicForce& force,
                                        const NoiseModel& noise, const State& initial,
                                        std::uint64_t path) {
  const Integrator ref = make_reference_integrator(spaces, cfg, force, noise);
  State s = initial;
  s.u = leray_project(*spaces, initial.u);
  s.p = PressureField(cfg.n_modes);
  return ref.run_path(s, path);
}

void EpsSweepPlan::validate() const {
  if (eps_values.empty()) throw ConfigError("eps_values must not be empty");
  for (std::size_t i = 0; i < eps_values.size(); ++i) {
    if (!(eps_values[i] > 0.0)) throw ConfigError("eps_values must be positive");
    if (i > 0 && !(eps_values[i] < eps_values[i - 1])) {
      throw ConfigError("eps_values must be strictly decreasing");
    }
  }
  if (paths < 2) throw ConfigError("sweep paths must be >= 2");
  SolverConfig c = shared;
  c.eps = eps_values.front();
  c.validate();
}

double pressure_energy_bound(double initial_energy, double force_sq, double trace, double delta,
                             double T) {
  const double c = force_sq / delta + trace;
  const double grow = std::expm1(delta * T) / delta;
  return (initial_energy + c / delta) * grow - c * T / delta;
}

namespace {

struct PathSeries {
  bool ok = false;
  std::vector<double> div_sq;
  std::vector<double> diff_sq;
  double pressure_energy = 0.0;
};

std::pair<double, std::size_t> sup_mean(const std::vector<const PathSeries*>& used,
                                        std::vector<double> PathSeries::*member, double& se) {
  const std::size_t nt = (used.front()->*member).size();
  double best = -1.0;
  std::size_t arg = 0;
  std::vector<double> vals(used.size());
  SampleStats best_stats;
  for (std::size_t m = 0; m < nt; ++m) {
    for (std::size_t i = 0; i < used.size(); ++i) vals[i] = (used[i]->*member)[m];
    const SampleStats st = sample_stats(vals);
    if (st.mean > best) {
      best = st.mean;
      best_stats = st;
      arg = m;
    }
  }
  se = best_stats.se;
  return {best, arg};
}

}  // namespace

ConvergenceReport epsilon_sweep(const EpsSweepPlan& plan, std::shared_ptr<const Spaces> spaces) {
  plan.validate();
  const std::size_t ne = plan.eps_values.size();
  const std::size_t np = static_cast<std::size_t>(plan.paths);
  const SolverConfig& base = plan.shared;
  const double dt = base.dt;

  State initial = project_initial(plan.initial, *spaces);
  const Integrator ref = make_reference_integrator(spaces, base, plan.force, plan.noise);
  std::vector<Integrator> runs;
  runs.reserve(ne);
  for (double eps : plan.eps_values) {
    SolverConfig c = base;
    c.eps = eps;
    runs.emplace_back(spaces, c, plan.force, plan.noise);
  }

  std::vector<char> ref_ok(np, 0);
  std::vector<std::vector<PathSeries>> series(ne, std::vector<PathSeries>(np));
  const SparseRowMatrix& b = spaces->weak_divergence();

  parallel_for(np, plan.threads, [&](std::size_t i) {
    std::vector<Eigen::VectorXd> uref;
    try {
      State s0 = initial;
      s0.u = leray_project(*spaces, initial.u);
      s0.p = PressureField(base.n_modes);
      ref.run_path(s0, i, [&](int, const State& s) { uref.push_back(s.u.coeffs); });
    } catch (const DivergedPath&) {
      return;
    }
    ref_ok[i] = 1;
    for (std::size_t e = 0; e < ne; ++e) {
      PathSeries& ps = series[e][i];
      const double eps = plan.eps_values[e];
      double prev_pe = 0.0;
      try {
        runs[e].run_path(initial, i, [&](int m, const State& s) {
          ps.div_sq.push_back((b * s.u.coeffs).squaredNorm());
          ps.diff_sq.push_back((s.u.coeffs - uref[static_cast<std::size_t>(m)]).squaredNorm());
          const double pe = eps * s.p.coeffs.squaredNorm();
          if (m > 0) ps.pressure_energy += 0.5 * dt * (prev_pe + pe);
          prev_pe = pe;
        });
        ps.ok = true;
      } catch (const DivergedPath&) {
        ps.ok = false;
      }
    }
  });

  ConvergenceReport rep;
  for (std::size_t i = 0; i < np; ++i) rep.reference_diverged += ref_ok[i] ? 0 : 1;
  const double delta = base.delta > 0.0 ? base.delta : 1.0;
  const double e0 = initial.u.coeffs.squaredNorm() +
                    plan.eps_values.front() * initial.p.coeffs.squaredNorm();
  rep.pressure_bound =
      pressure_energy_bound(e0, plan.force.f.n_modes ? plan.force.l2_norm_sq() : 0.0,
                            plan.noise.trace(), delta, base.steps() * dt);

  for (std::size_t e = 0; e < ne; ++e) {
    EpsRow row;
    row.eps = plan.eps_values[e];
    std::vector<const PathSeries*> used;
    for (std::size_t i = 0; i < np; ++i) {
      if (ref_ok[i] && series[e][i].ok) {
        used.push_back(&series[e][i]);
      } else {
        ++row.diverged;
      }
    }
    row.used_paths = static_cast<int>(used.size());
    if (static_cast<double>(row.diverged) > plan.max_diverged_fraction * static_cast<double>(np)) {
      rep.divergence_budget_ok = false;
    }
    if (used.size() >= 2) {
      const auto [dv, dm] = sup_mean(used, &PathSeries::div_sq, row.div_se);
      row.div_sq = dv;
      row.div_time = static_cast<double>(dm) * dt;
      const auto [fv, fm] = sup_mean(used, &PathSeries::diff_sq, row.diff_se);
      row.diff_sq = fv;
      row.diff_time = static_cast<double>(fm) * dt;
      std::vector<double> pe;
      for (const PathSeries* p : used) pe.push_back(p->pressure_energy);
      const SampleStats st = sample_stats(pe);
      row.pressure_energy = st.mean;
      row.pressure_se = st.se;
    } else {
      rep.divergence_budget_ok = false;
    }
    if (row.pressure_energy > rep.pressure_bound) rep.pressure_bounded = false;
    rep.rows.push_back(row);
  }

  for (std::size_t e = 1; e < ne; ++e) {
    const EpsRow& a = rep.rows[e - 1];
    const EpsRow& c = rep.rows[e];
    const double combined = std::sqrt(a.div_se * a.div_se + c.div_se * c.div_se);
    if (!(a.div_sq - c.div_sq > combined)) rep.divergence_decreasing = false;
    if (!(c.diff_sq < a.diff_sq)) rep.difference_decreasing = false;
    const double le = std::log(a.eps / c.eps);
    rep.divergence_rates.push_back(std::log(a.div_sq / c.div_sq) / le);
    rep.difference_rates.push_back(std::log(a.diff_sq / c.diff_sq) / le);
  }
  return rep;
}

}  // namespace sacns

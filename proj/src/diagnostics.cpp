#include "sacns/diagnostics.hpp"

#include "sacns/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sacns {
namespace {

void require_paths(const std::vector<PathRecord>& paths) {
  if (paths.size() < 2) throw ConfigError("Monte Carlo estimates need at least 2 paths");
  for (const PathRecord& r : paths) {
    if (r.size() != paths.front().size()) throw StructuralError("paths of different lengths");
  }
}

}  // namespace

void MomentConfig::validate() const {
  if (!(p >= 2.0)) throw ConfigError("moment_p must be >= 2");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (paths < 2) throw ConfigError("paths must be >= 2");
  if (!(confidence_z >= 0.0)) throw ConfigError("confidence_z must be non-negative");
}

SampleStats sample_stats(const std::vector<double>& x) {
  SampleStats s;
  if (x.empty()) return s;
  double sum = 0.0;
  for (double v : x) sum += v;
  s.mean = sum / static_cast<double>(x.size());
  if (x.size() < 2) return s;
  double ss = 0.0;
  for (double v : x) ss += (v - s.mean) * (v - s.mean);
  s.se = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
  return s;
}

std::vector<double> weighted_dissipation(const PathRecord& rec, double nu, double delta,
                                         double p) {
  std::vector<double> out(rec.size(), 0.0);
  auto integrand = [&](std::size_t m) {
    return p * nu * rec.h1_u[m] * rec.h1_u[m] * std::pow(rec.l2_u[m], p - 2.0) *
           std::exp(-delta * rec.t[m]);
  };
  double prev = rec.size() > 0 ? integrand(0) : 0.0;
  for (std::size_t m = 1; m < rec.size(); ++m) {
    const double cur = integrand(m);
    out[m] = out[m - 1] + 0.5 * (rec.t[m] - rec.t[m - 1]) * (prev + cur);
    prev = cur;
  }
  return out;
}

double energy_bound_rhs(double initial_energy, double force_sq, double trace, double delta,
                        double t) {
  return initial_energy + (force_sq / delta + trace) * (-std::expm1(-delta * t)) / delta;
}

EnergyBoundReport mc_energy_bound(const std::vector<PathRecord>& paths, const SolverConfig& cfg,
                                  double force_sq, double trace, double delta, double z) {
  require_paths(paths);
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  const std::size_t nt = paths.front().size();
  const std::size_t np = paths.size();
  std::vector<std::vector<double>> diss(np);
  for (std::size_t i = 0; i < np; ++i) diss[i] = weighted_dissipation(paths[i], cfg.nu, delta, 2.0);

  EnergyBoundReport rep;
  rep.delta = delta;
  rep.paths = static_cast<int>(np);
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double e0 = paths.front().energy[0];
  std::vector<double> vals(np);
  for (std::size_t m = 0; m < nt; ++m) {
    const double t = paths.front().t[m];
    for (std::size_t i = 0; i < np; ++i) {
      vals[i] = paths[i].energy[m] * std::exp(-delta * t) + diss[i][m];
    }
    const SampleStats st = sample_stats(vals);
    const double rhs = energy_bound_rhs(e0, force_sq, trace, delta, t);
    rep.t.push_back(t);
    rep.lhs.push_back(st.mean);
    rep.se.push_back(st.se);
    rep.rhs.push_back(rhs);
    const double margin = rhs + z * st.se - st.mean;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_time = t;
    }
  }
  std::vector<double> last(np);
  for (std::size_t i = 0; i < np; ++i) last[i] = diss[i].back();
  rep.dissipation_at_T = sample_stats(last).mean;
  rep.pass = rep.worst_margin >= 0.0;
  return rep;
}

double moment_functional(const PathRecord& rec, const SolverConfig& cfg, double p, double delta) {
  double sup = 0.0;
  for (std::size_t m = 0; m < rec.size(); ++m) {
    const double v = (std::pow(rec.l2_u[m], p) + cfg.eps * std::pow(rec.l2_p[m], p)) *
                     std::exp(-delta * rec.t[m]);
    sup = std::max(sup, v);
  }
  return sup + weighted_dissipation(rec, cfg.nu, delta, p).back();
}

MomentBoundReport mc_moment_bound(const std::vector<PathRecord>& paths, const SolverConfig& cfg,
                                  double force_norm, double trace, double p, double delta) {
  require_paths(paths);
  MomentConfig{p, delta, static_cast<int>(paths.size()), 0.0}.validate();
  MomentBoundReport rep;
  rep.p = p;
  rep.delta = delta;
  rep.paths = static_cast<int>(paths.size());
  std::vector<double> total, diss, sup;
  for (const PathRecord& r : paths) {
    const double d = weighted_dissipation(r, cfg.nu, delta, p).back();
    const double f = moment_functional(r, cfg, p, delta);
    total.push_back(f);
    diss.push_back(d);
    sup.push_back(f - d);
  }
  const SampleStats st = sample_stats(total);
  rep.lhs = st.mean;
  rep.se = st.se;
  rep.dissipation = sample_stats(diss).mean;
  rep.sup_term = sample_stats(sup).mean;
  const PathRecord& r0 = paths.front();
  rep.initial = std::pow(r0.l2_u[0], p) + cfg.eps * std::pow(r0.l2_p[0], p);
  const double T = r0.t.back();
  rep.rhs_integral = (std::pow(force_norm, p) + std::pow(trace, 0.5 * p)) *
                     (-std::expm1(-delta * T)) / delta;
  rep.defined = rep.rhs_integral > 0.0;
  rep.implied_c = rep.defined ? (rep.lhs - rep.initial) / rep.rhs_integral
                              : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

UniquenessReport pathwise_uniqueness_check(const Integrator& integrator, const State& a,
                                           const State& b, std::uint64_t path, double c_check) {
  const SolverConfig& cfg = integrator.config();
  const double nu3 = cfg.nu * cfg.nu * cfg.nu;
  const double coef = 27.0 / nu3;
  UniquenessReport rep;

  State sa = a;
  State sb = b;
  auto diff = [&] {
    return (sa.u.coeffs - sb.u.coeffs).squaredNorm() +
           cfg.eps * (sa.p.coeffs - sb.p.coeffs).squaredNorm();
  };
  auto l4_4 = [&] {
    const double l4 = l4_norm(integrator.grid(), sa.u);
    return l4 * l4 * l4 * l4;
  };

  double r = 0.0;
  double prev_l4 = l4_4();
  const int steps = cfg.steps();
  for (int m = 0;; ++m) {
    const double d = diff();
    rep.t.push_back(m * cfg.dt);
    rep.weight.push_back(r);
    rep.difference.push_back(d);
    rep.weighted_diff.push_back(d * std::exp(-r));
    if (m == steps) break;
    const WienerIncrement inc = integrator.increment(path, static_cast<std::uint64_t>(m));
    sa = integrator.step(sa, inc);
    sb = integrator.step(sb, inc);
    const double cur_l4 = l4_4();
    r += coef * 0.5 * cfg.dt * (prev_l4 + cur_l4);
    prev_l4 = cur_l4;
  }

  rep.identical_zero = std::all_of(rep.weighted_diff.begin(), rep.weighted_diff.end(),
                                   [](double w) { return w == 0.0; });
  rep.max_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m + 1 < rep.weighted_diff.size(); ++m) {
    rep.max_increase = std::max(rep.max_increase, rep.weighted_diff[m + 1] - rep.weighted_diff[m]);
  }
  rep.tolerance = c_check * cfg.dt * rep.weighted_diff.front();
  rep.pass = rep.max_increase <= rep.tolerance;
  return rep;
}

std::vector<double> divergence_norm_series(const PathRecord& rec) { return rec.l2_div_u; }

}  // namespace sacns

// Acceptance checks, one PASS/FAIL line per criterion.
//   acceptance                 all criteria
//   acceptance --criterion N   only criterion N

#include "quadrature_oracle.hpp"

#include "sacns/commands.hpp"
#include "sacns/config.hpp"
#include "sacns/diagnostics.hpp"
#include "sacns/ensemble.hpp"
#include "sacns/eps_limit.hpp"
#include "sacns/operators.hpp"
#include "sacns/output.hpp"
#include "sacns/random_fields.hpp"
#include "sacns/verification.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace sacns;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) { return format_double(x); }

struct Model {
  std::shared_ptr<const Spaces> spaces;
  DeterministicForce force;
  NoiseModel noise;
};

Model build_model(const RunConfig& cfg) {
  Model m;
  m.spaces = build_spaces(cfg.solver.n_modes, cfg.solver.max_modes);
  m.force = build_force(cfg.force, cfg.solver.n_modes);
  m.noise = build_noise(cfg.noise, *m.spaces);
  return m;
}

std::vector<PathRecord> all_records(const std::vector<PathOutcome>& outcomes) {
  std::vector<PathRecord> out;
  for (const PathOutcome& o : outcomes) {
    if (o.record) out.push_back(*o.record);
  }
  return out;
}

// 1. Randomized inequality suite.
Outcome inequality_suite() {
  constexpr int kSamples = 1000;
  constexpr double kBudgetSeconds = 120.0;
  Stopwatch clock;
  VerifyPlan plan;
  plan.samples = kSamples;
  const VerifyReport rep = run_inequality_suite(plan);
  const double secs = clock.seconds();
  return {rep.pass() && secs <= kBudgetSeconds,
          std::to_string(kSamples) + " samples, " + std::to_string(rep.rows.size()) + " rows, " +
              std::to_string(rep.violations) + " violations, " + fmt(secs) + " s"};
}

// 2. Null pairings and antisymmetry of the trilinear form.
Outcome null_pairings() {
  constexpr double kTol = 1e-12;
  constexpr int kSamples = 300;
  double worst = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const int n = 1 + s % 8;
    const SpectralGrid grid(n, default_quad_order(n));
    const double amp = std::pow(10.0, 6.0 * random_scale(77, s, 0) - 3.0);
    const VelocityField u = amp * random_field(n, 77, s, 0);
    const VelocityField v = random_field(n, 77, s, 1);
    const VelocityField w = random_field(n, 77, s, 2);
    const double suu = h10_norm(u) * h10_norm(u) * h10_norm(u);
    const double suv = h10_norm(u) * h10_norm(v) * h10_norm(v);
    const double svw = h10_norm(u) * h10_norm(v) * h10_norm(w);
    worst = std::max({worst, std::abs(trilinear_bhat(grid, u, u, u)) / suu,
                      std::abs(bhat_operator(grid, u).apply(u)) / suu,
                      std::abs(trilinear_bhat(grid, u, v, v)) / suv,
                      std::abs(trilinear_bhat(grid, u, v, w) + trilinear_bhat(grid, u, w, v)) / svw});
  }
  return {worst <= kTol, std::to_string(kSamples) + " samples, N <= 8, worst |pairing|/scale " +
                             fmt(worst) + " (tol " + fmt(kTol) + ")"};
}

// 3. Spectral operators against direct pointwise quadrature.
Outcome oracle_equivalence() {
  constexpr double kRelTol = 1e-8;
  constexpr int kInstances = 200;
  constexpr int kOracleOrder = 32;
  const oracle::QuadRule rule = oracle::golub_welsch(kOracleOrder);
  double worst = 0.0;
  std::string worst_name;
  auto record = [&](const std::string& name, double a, double b, double scale) {
    const double e = std::abs(a - b) / scale;
    if (e > worst) {
      worst = e;
      worst_name = name;
    }
  };
  for (int s = 0; s < kInstances; ++s) {
    const int n = 1 + s % 4;
    const auto spaces = build_spaces(n);
    const SpectralGrid grid(n, default_quad_order(n));
    const VelocityField u = random_field(n, 91, s, 0);
    const VelocityField v = random_field(n, 91, s, 1);
    const VelocityField w = random_field(n, 91, s, 2);
    const double hu = h10_norm(u), hv = h10_norm(v), hw = h10_norm(w);
    record("l2", l2_norm(u), oracle::l2_norm(u, rule), l2_norm(u));
    record("h1", hu, oracle::h10_norm(u, rule), hu);
    record("l4", l4_norm(grid, u), oracle::l4_norm(u, rule), l4_norm(grid, u));
    record("inner", inner(u, v), oracle::inner(u, v, rule), l2_norm(u) * l2_norm(v));
    record("stokes", stokes_apply(u, 0.1).apply(w), 0.1 * oracle::dirichlet_form(u, w, rule),
           0.1 * hu * hw);
    record("trilinear", trilinear_bhat(grid, u, v, w), oracle::trilinear(u, v, w, rule), hu * hv * hw);
    record("bhat", bhat_operator(grid, u).apply(w), oracle::trilinear(u, u, w, rule), hu * hu * hw);
    const PressureField bu = weak_divergence(*spaces, u);
    for (int slot = 0; slot < bu.coeffs.size(); ++slot) {
      const PressureIndex q = pressure_index(n, slot);
      record("divergence", bu.coeffs[slot], oracle::divergence_moment(u, q.a, q.b, rule), hu);
    }
  }
  return {worst <= kRelTol, std::to_string(kInstances) + " instances, N <= 4, worst relative error " +
                                fmt(worst) + " (" + worst_name + ", tol " + fmt(kRelTol) + ")"};
}

// 4. Energy-residual order under dt-halving.
Outcome residual_orders() {
  constexpr double kDetLo = 1.6, kDetHi = 2.4;
  constexpr double kStoLo = 0.6, kStoHi = 1.4;
  constexpr int kStochasticPaths = 16;
  const std::vector<double> dts{2e-3, 1e-3, 5e-4};

  SolverConfig base;
  base.n_modes = 8;
  base.T = 0.25;
  const auto spaces = build_spaces(base.n_modes);

  DeterministicForce f{VelocityField(base.n_modes)};
  f.f.at(1, 1, 1) = 1.0;
  const NoiseModel silent(base.n_modes, {});
  const State u0 = project_initial(InitialSpec{}, *spaces);
  std::vector<double> det;
  for (double dt : dts) {
    SolverConfig c = base;
    c.dt = dt;
    det.push_back(rms_residual(Integrator(spaces, c, f, silent).run_path(u0, 0).ledger));
  }
  const ResidualSummary d = residual_order(dts, det);

  // From rest, unforced, one Brownian path per index shared across the three dt.
  const DeterministicForce zero{VelocityField(base.n_modes)};
  const NoiseModel noise = NoiseModel::from_amplitudes(base.n_modes, default_noise_modes(0.01));
  InitialSpec rest;
  rest.preset = "zero";
  const State z0 = project_initial(rest, *spaces);
  std::vector<double> sto;
  for (std::size_t level = 0; level < dts.size(); ++level) {
    SolverConfig c = base;
    c.dt = dts[level];
    c.brownian_refinement = static_cast<int>(dts.size() - 1 - level);
    const Integrator integ(spaces, c, zero, noise);
    double acc = 0.0;
    for (int p = 0; p < kStochasticPaths; ++p) acc += rms_residual(integ.run_path(z0, p).ledger);
    sto.push_back(acc / kStochasticPaths);
  }
  const ResidualSummary s = residual_order(dts, sto);

  const bool ok = d.slope_defined && s.slope_defined && d.slope >= kDetLo && d.slope <= kDetHi &&
                  s.slope >= kStoLo && s.slope <= kStoHi;
  return {ok, "deterministic slope " + fmt(d.slope) + " in [" + fmt(kDetLo) + ", " + fmt(kDetHi) +
                  "], stochastic slope " + fmt(s.slope) + " in [" + fmt(kStoLo) + ", " +
                  fmt(kStoHi) + "]"};
}

// 5. Monte Carlo energy estimate.
Outcome energy_estimate() {
  constexpr int kPaths = 200;
  constexpr double kZ = 3.0;
  constexpr double kBudgetSeconds = 300.0;
  const std::vector<double> deltas{0.5, 1.0, 2.0};
  Stopwatch clock;
  const RunConfig cfg = default_config();
  const Model m = build_model(cfg);
  const Integrator integ(m.spaces, cfg.solver, m.force, m.noise);
  const auto outcomes = run_ensemble(integ, project_initial(cfg.initial, *m.spaces), kPaths, 1);
  const auto records = all_records(outcomes);
  bool ok = records.size() == outcomes.size();
  std::string detail = std::to_string(records.size()) + " paths;";
  for (double delta : deltas) {
    const EnergyBoundReport r =
        mc_energy_bound(records, cfg.solver, m.force.l2_norm_sq(), m.noise.trace(), delta, kZ);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.t.size(); ++i) worst = std::min(worst, r.rhs[i] + kZ * r.se[i] - r.lhs[i]);
    ok = ok && worst >= 0.0;
    detail += " delta " + fmt(delta) + " worst margin " + fmt(worst) + ";";
  }
  const double secs = clock.seconds();
  ok = ok && secs <= kBudgetSeconds;
  return {ok, detail + " " + fmt(secs) + " s"};
}

// 6. Implied constant of the p-th moment estimate.
Outcome moment_estimate() {
  constexpr int kHalf = 100, kFull = 200;
  constexpr double kStability = 0.25;
  constexpr double kConsistency = 1e-12;
  const RunConfig cfg = default_config();
  const Model m = build_model(cfg);
  const Integrator integ(m.spaces, cfg.solver, m.force, m.noise);
  const auto outcomes = run_ensemble(integ, project_initial(cfg.initial, *m.spaces), kFull, 1);
  const auto full = all_records(outcomes);
  if (full.size() != static_cast<std::size_t>(kFull)) return {false, "diverged paths"};
  const std::vector<PathRecord> half(full.begin(), full.begin() + kHalf);
  const double fn = std::sqrt(m.force.l2_norm_sq());
  const double tr = m.noise.trace();
  const double p = cfg.solver.moment_p, delta = cfg.solver.delta;
  const MomentBoundReport a = mc_moment_bound(half, cfg.solver, fn, tr, p, delta);
  const MomentBoundReport b = mc_moment_bound(full, cfg.solver, fn, tr, p, delta);
  const double change = std::abs(b.implied_c - a.implied_c) / std::abs(b.implied_c);
  const MomentBoundReport two = mc_moment_bound(full, cfg.solver, fn, tr, 2.0, delta);
  const EnergyBoundReport e =
      mc_energy_bound(full, cfg.solver, m.force.l2_norm_sq(), tr, delta, cfg.diagnostics.confidence_z);
  const double gap = std::abs(two.dissipation - e.dissipation_at_T);
  const bool ok = a.defined && b.defined && std::isfinite(change) && change <= kStability &&
                  gap <= kConsistency * std::max(1.0, std::abs(e.dissipation_at_T));
  return {ok, "p " + fmt(p) + ": C " + fmt(a.implied_c) + " (M=" + std::to_string(kHalf) + "), " +
                  fmt(b.implied_c) + " (M=" + std::to_string(kFull) + "), relative change " +
                  fmt(change) + " (tol " + fmt(kStability) + "); p=2 gap " + fmt(gap)};
}

// 7. Pathwise uniqueness under dt-halving.
Outcome uniqueness() {
  constexpr double kAmplitude = 0.1;
  constexpr double kPerturbation = 1e-3;
  constexpr double kRatioLo = 1.5, kRatioHi = 2.5;
  const std::vector<double> dts{2e-3, 1e-3, 5e-4};
  RunConfig cfg = default_config();
  const Model m = build_model(cfg);
  InitialSpec spec = cfg.initial;
  spec.amplitude = kAmplitude;
  const State a = project_initial(spec, *m.spaces);
  State b = a;
  b.u.at(1, 1, 1) += kPerturbation;

  bool ok = true;
  bool zero = false;
  std::vector<double> inc;
  for (std::size_t level = 0; level < dts.size(); ++level) {
    SolverConfig c = cfg.solver;
    c.dt = dts[level];
    c.brownian_refinement = static_cast<int>(dts.size() - 1 - level);
    const Integrator integ(m.spaces, c, m.force, m.noise);
    if (level == 0) zero = pathwise_uniqueness_check(integ, a, a, 0, 1.0).identical_zero;
    const UniquenessReport r = pathwise_uniqueness_check(integ, a, b, 0, 1.0);
    ok = ok && r.pass;
    inc.push_back(r.max_increase);
  }
  ok = ok && zero;
  std::string detail = "identical inputs exact zero " + std::string(zero ? "yes" : "no") + "; max increase";
  for (double x : inc) detail += " " + fmt(x);
  detail += "; ratios";
  for (std::size_t i = 1; i < inc.size(); ++i) {
    const double ratio = inc[i - 1] / inc[i];
    ok = ok && std::isfinite(ratio) && ratio >= kRatioLo && ratio <= kRatioHi;
    detail += " " + fmt(ratio);
  }
  return {ok, detail + " in [" + fmt(kRatioLo) + ", " + fmt(kRatioHi) + "]"};
}

// 8. Artificial-compressibility sweep with the default sweep settings.
Outcome eps_sweep() {
  constexpr double kBudgetSeconds = 600.0;
  Stopwatch clock;
  const RunConfig cfg = default_config();
  const auto spaces = build_spaces(cfg.solver.n_modes, cfg.solver.max_modes);
  EpsSweepPlan plan;
  plan.eps_values = cfg.sweep.eps_values;
  plan.shared = cfg.solver;
  ForceSpec force = cfg.force;
  force.preset = cfg.sweep.force;
  plan.force = build_force(force, cfg.solver.n_modes);
  NoiseSpec noise = cfg.noise;
  noise.preset = cfg.sweep.noise;
  plan.noise = build_noise(noise, *spaces);
  plan.initial = cfg.initial;
  plan.initial.preset = cfg.sweep.initial;
  plan.paths = cfg.sweep.paths;
  const ConvergenceReport rep = epsilon_sweep(plan, spaces);
  const double secs = clock.seconds();
  std::string detail;
  for (const EpsRow& r : rep.rows) {
    detail += "eps " + fmt(r.eps) + ": div " + fmt(r.div_sq) + " diff " + fmt(r.diff_sq) +
              " pressure " + fmt(r.pressure_energy) + "; ";
  }
  return {rep.pass() && secs <= kBudgetSeconds,
          detail + "pressure bound " + fmt(rep.pressure_bound) + ", " + fmt(secs) + " s"};
}

// 9. Outputs are byte-identical across thread counts.
std::string read_bytes(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string stable_manifest(const fs::path& p) {
  auto j = nlohmann::ordered_json::parse(read_bytes(p));
  j.erase("timestamps");
  j.erase("execution");
  return j.dump();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> runs{
      {"run", "--paths", "3", "--set", "n_modes=4", "--set", "T=0.02"},
      {"mc-energy", "--paths", "6", "--set", "n_modes=4", "--set", "T=0.02"},
      {"sweep-eps", "--paths", "4", "--set", "n_modes=3", "--set", "T=0.02", "--set",
       "sweep.eps_values=0.1,0.01"},
      {"verify", "--samples", "20"},
  };
  const fs::path root = fs::temp_directory_path() / "sacns_acceptance_determinism";
  bool ok = true;
  int files = 0;
  std::string detail;
  for (const auto& base : runs) {
    std::vector<int> codes;
    std::vector<fs::path> dirs;
    for (int threads : {1, 4}) {
      const fs::path dir = root / (base[0] + "_t" + std::to_string(threads));
      fs::remove_all(dir);
      std::vector<std::string> args = base;
      for (const std::string& extra : {std::string("--threads"), std::to_string(threads),
                                       std::string("--out"), dir.string(), std::string("--quiet")}) {
        args.push_back(extra);
      }
      std::ostringstream out, err;
      codes.push_back(dispatch(args, out, err));
      dirs.push_back(dir);
    }
    bool same = codes[0] == codes[1] && codes[0] != kExitUsage;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const fs::path other = dirs[1] / entry.path().filename();
      if (!fs::exists(other)) {
        same = false;
        continue;
      }
      ++files;
      if (entry.path().filename() == "manifest.json") {
        same = same && stable_manifest(entry.path()) == stable_manifest(other);
      } else {
        same = same && read_bytes(entry.path()) == read_bytes(other);
      }
    }
    if (!same) detail += base[0] + " differs; ";
    ok = ok && same;
  }
  fs::remove_all(root);
  return {ok, detail + std::to_string(files) + " files compared, threads 1 vs 4"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, inequality_suite}, {2, null_pairings}, {3, oracle_equivalence},
      {4, residual_orders},  {5, energy_estimate}, {6, moment_estimate},
      {7, uniqueness},       {8, eps_sweep},       {9, determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  bool all = true;
  for (const auto& [id, check] : criteria) {
    if (only != 0 && id != only) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

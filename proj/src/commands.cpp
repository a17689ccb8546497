#include "sacns/commands.hpp"

#include "sacns/config.hpp"
#include "sacns/diagnostics.hpp"
#include "sacns/ensemble.hpp"
#include "sacns/eps_limit.hpp"
#include "sacns/errors.hpp"
#include "sacns/output.hpp"
#include "sacns/snapshot.hpp"
#include "sacns/verification.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace sacns {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

/// Shared state of one subcommand invocation: where files go and what the
/// manifest records about them.
class Session {
 public:
  Session(std::string subcommand, RunConfig cfg, fs::path out_dir, bool quiet, std::ostream& log)
      : cfg_(std::move(cfg)), out_dir_(std::move(out_dir)), quiet_(quiet), log_(log) {
    manifest_.code_version = code_version();
    manifest_.subcommand = std::move(subcommand);
    manifest_.config_echo = cfg_.canonical_echo();
    for (const auto& [k, p] : cfg_.provenance) manifest_.config_sources[k] = p.source;
    manifest_.seed = cfg_.solver.seed;
    manifest_.threads = cfg_.run.threads;
    manifest_.started = utc_timestamp();
    digest_ = manifest_.digest();
  }

  const RunConfig& cfg() const { return cfg_; }
  const std::string& digest() const { return digest_; }
  int threads() const { return cfg_.run.threads; }

  CsvTable table(std::vector<std::string> columns) const { return CsvTable(digest_, std::move(columns)); }

  void emit(const std::string& name, const std::string& bytes) {
    write_file(out_dir_ / name, bytes);
    manifest_.outputs[name] = sha256_hex(bytes);
  }
  void emit(const std::string& name, const CsvTable& t) { emit(name, t.str()); }

  /// Summary JSON: digest first, then pass, then the caller's fields and the seed.
  void emit_summary(const std::string& name, bool pass, const ojson& body) {
    ojson j;
    j["manifest_digest"] = digest_;
    j["subcommand"] = manifest_.subcommand;
    j["pass"] = pass;
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    j["seed"] = cfg_.solver.seed;
    emit(name, json_text(j));
  }

  std::ostream& log() { return quiet_ ? null_ : log_; }

  void finish() {
    manifest_.finished = utc_timestamp();
    write_file(out_dir_ / "manifest.json", json_text(manifest_.to_json()));
  }

 private:
  RunConfig cfg_;
  fs::path out_dir_;
  bool quiet_;
  std::ostream& log_;
  std::ostringstream null_;
  RunManifest manifest_;
  std::string digest_;
};

std::string path_file(const char* stem, std::size_t i, const char* ext) {
  std::ostringstream os;
  os << stem << std::setw(4) << std::setfill('0') << i << ext;
  return os.str();
}

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

CsvTable path_table(const Session& s, const PathRecord& rec) {
  CsvTable t = s.table({"t", "l2_u", "h1_u", "l4_u", "l2_p", "l2_div_u", "energy", "residual"});
  for (std::size_t m = 0; m < rec.size(); ++m) {
    t.add_row(std::vector<double>{rec.t[m], rec.l2_u[m], rec.h1_u[m], rec.l4_u[m], rec.l2_p[m],
                                  rec.l2_div_u[m], rec.energy[m], rec.residual[m]});
  }
  return t;
}

/// Paths 0..count-1; diverged paths are reported, not thrown.
std::vector<PathOutcome> ensemble(const Integrator& integ, const State& initial, int count,
                                  int threads) {
  return run_ensemble(integ, initial, static_cast<std::size_t>(count), threads);
}

ojson failures_json(const std::vector<PathOutcome>& outcomes) {
  ojson arr = ojson::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].record) {
      arr.push_back({{"path", i}, {"step", outcomes[i].failed_step}, {"error", outcomes[i].failure}});
    }
  }
  return arr;
}

int cmd_run(Session& s) {
  const RunConfig& cfg = s.cfg();
  const Model model = build_model(cfg);
  const Integrator integ(model.spaces, cfg.solver, model.force, model.noise);
  const State initial = project_initial(cfg.initial, *model.spaces);
  const auto count = static_cast<std::size_t>(cfg.run.paths);

  std::vector<std::optional<PathRecord>> records(count);
  std::vector<State> finals(count);
  std::vector<std::string> failures(count);
  parallel_for(count, s.threads(), [&](std::size_t i) {
    try {
      records[i] = integ.run_path(initial, i, [&](int, const State& st) { finals[i] = st; });
    } catch (const DivergedPath& e) {
      failures[i] = e.what();
    }
  });

  bool pass = true;
  ojson paths = ojson::array();
  for (std::size_t i = 0; i < count; ++i) {
    if (!records[i]) {
      pass = false;
      paths.push_back({{"path", i}, {"diverged", true}, {"error", failures[i]}});
      s.log() << "path " << i << ": " << failures[i] << "\n";
      continue;
    }
    const PathRecord& rec = *records[i];
    s.emit(path_file("path_", i, ".csv"), path_table(s, rec));
    if (cfg.run.snapshot) {
      s.emit(path_file("final_", i, ".snap"),
             encode_snapshot(Snapshot{finals[i], cfg.solver.seed, i, s.digest()}));
    }
    paths.push_back({{"path", i},
                     {"diverged", false},
                     {"final_energy", rec.energy.back()},
                     {"max_abs_residual", max_abs_residual(rec.ledger)},
                     {"rms_residual", rms_residual(rec.ledger)}});
    s.log() << "path " << i << ": steps " << rec.size() - 1 << ", final energy "
            << format_double(rec.energy.back()) << ", max |residual| "
            << format_double(max_abs_residual(rec.ledger)) << "\n";
  }
  s.emit_summary("run_summary.json", pass, {{"paths", paths}});
  return pass ? kExitPass : kExitAssertion;
}

int cmd_verify(Session& s) {
  const RunConfig& cfg = s.cfg();
  VerifyPlan plan;
  plan.seed = cfg.solver.seed;
  plan.samples = cfg.verify.samples;
  plan.n_modes = cfg.verify.n_modes;
  plan.nus = cfg.verify.nus;
  plan.spectral_exponent = cfg.verify.spectral_exponent;
  const VerifyReport rep = run_inequality_suite(plan);

  CsvTable t = s.table({"check", "seed", "n_modes", "nu", "lhs", "rhs", "margin", "pass"});
  struct Worst {
    int rows = 0;
    int violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
  };
  std::map<std::string, Worst> worst;
  for (const LedgerRow& r : rep.rows) {
    t.add_row({r.check, std::to_string(r.seed), std::to_string(r.n_modes), format_double(r.nu),
               format_double(r.lhs), format_double(r.rhs), format_double(r.margin),
               r.pass ? "1" : "0"});
    Worst& w = worst[r.check];
    ++w.rows;
    w.violations += r.pass ? 0 : 1;
    w.min_margin = std::min(w.min_margin, r.margin);
    if (r.rhs > 0.0) w.max_ratio = std::max(w.max_ratio, r.lhs / r.rhs);
  }
  s.emit("verify_ledger.csv", t);

  ojson checks = ojson::object();
  for (const auto& [name, w] : worst) {
    checks[name] = {{"rows", w.rows},
                    {"violations", w.violations},
                    {"min_margin", w.min_margin},
                    {"max_lhs_over_rhs", w.max_ratio}};
    s.log() << name << ": " << w.rows << " rows, " << w.violations << " violations, max lhs/rhs "
            << format_double(w.max_ratio) << "\n";
  }
  s.emit_summary("verify_summary.json", rep.pass(),
                 {{"samples", plan.samples},
                  {"rows", rep.rows.size()},
                  {"violations", rep.violations},
                  {"checks", checks}});
  s.log() << (rep.pass() ? "PASS" : "FAIL") << ": " << rep.violations << " violations in "
          << rep.rows.size() << " rows\n";
  return rep.pass() ? kExitPass : kExitAssertion;
}

std::vector<PathRecord> completed(const std::vector<PathOutcome>& outcomes, std::size_t limit) {
  std::vector<PathRecord> out;
  for (std::size_t i = 0; i < std::min(limit, outcomes.size()); ++i) {
    if (outcomes[i].record) out.push_back(*outcomes[i].record);
  }
  return out;
}

int cmd_mc_energy(Session& s) {
  const RunConfig& cfg = s.cfg();
  const Model model = build_model(cfg);
  const Integrator integ(model.spaces, cfg.solver, model.force, model.noise);
  const State initial = project_initial(cfg.initial, *model.spaces);
  const auto outcomes = ensemble(integ, initial, cfg.diagnostics.paths, s.threads());
  const std::vector<PathRecord> records = completed(outcomes, outcomes.size());
  bool pass = records.size() == outcomes.size();

  ojson margins = ojson::array();
  for (double delta : cfg.diagnostics.deltas) {
    const EnergyBoundReport rep =
        mc_energy_bound(records, cfg.solver, model.force.l2_norm_sq(), model.noise.trace(), delta,
                        cfg.diagnostics.confidence_z);
    CsvTable t = s.table({"t", "lhs", "se", "rhs", "margin"});
    for (std::size_t m = 0; m < rep.t.size(); ++m) {
      const double margin = rep.rhs[m] + cfg.diagnostics.confidence_z * rep.se[m] - rep.lhs[m];
      t.add_row(std::vector<double>{rep.t[m], rep.lhs[m], rep.se[m], rep.rhs[m], margin});
    }
    s.emit("energy_delta_" + format_double(delta) + ".csv", t);
    margins.push_back({{"delta", delta},
                       {"pass", rep.pass},
                       {"worst_margin", rep.worst_margin},
                       {"worst_time", rep.worst_time},
                       {"dissipation_at_T", rep.dissipation_at_T}});
    pass = pass && rep.pass;
    s.log() << "delta " << format_double(delta) << ": worst margin "
            << format_double(rep.worst_margin) << " at t = " << format_double(rep.worst_time)
            << (rep.pass ? " (pass)" : " (FAIL)") << "\n";
  }
  s.emit_summary("mc_energy_summary.json", pass,
                 {{"paths", outcomes.size()},
                  {"confidence_z", cfg.diagnostics.confidence_z},
                  {"margins", margins},
                  {"diverged", failures_json(outcomes)}});
  return pass ? kExitPass : kExitAssertion;
}

ojson moment_json(const MomentBoundReport& r) {
  return {{"paths", r.paths},         {"p", r.p},
          {"delta", r.delta},         {"lhs", r.lhs},
          {"se", r.se},               {"initial", r.initial},
          {"rhs_integral", r.rhs_integral}, {"implied_c", r.implied_c},
          {"defined", r.defined},     {"dissipation", r.dissipation},
          {"sup_term", r.sup_term}};
}

int cmd_mc_moment(Session& s) {
  const RunConfig& cfg = s.cfg();
  const Model model = build_model(cfg);
  const Integrator integ(model.spaces, cfg.solver, model.force, model.noise);
  const State initial = project_initial(cfg.initial, *model.spaces);
  const auto outcomes = ensemble(integ, initial, cfg.diagnostics.paths, s.threads());
  const std::size_t m_full = outcomes.size();
  const std::vector<PathRecord> half = completed(outcomes, m_full / 2);
  const std::vector<PathRecord> full = completed(outcomes, m_full);
  const double p = cfg.solver.moment_p;
  const double delta = cfg.solver.delta;
  const double fnorm = std::sqrt(model.force.l2_norm_sq());
  const double trace = model.noise.trace();

  const MomentBoundReport a = mc_moment_bound(half, cfg.solver, fnorm, trace, p, delta);
  const MomentBoundReport b = mc_moment_bound(full, cfg.solver, fnorm, trace, p, delta);
  const bool finite = a.defined && b.defined && std::isfinite(a.implied_c) &&
                      std::isfinite(b.implied_c);
  const double rel_change = finite ? std::abs(b.implied_c - a.implied_c) / std::abs(b.implied_c)
                                   : std::numeric_limits<double>::infinity();
  const bool stable = rel_change <= cfg.diagnostics.stability_tol;

  // p = 2: the weighted dissipation must coincide with the energy estimate's.
  const MomentBoundReport two = mc_moment_bound(full, cfg.solver, fnorm, trace, 2.0, delta);
  const EnergyBoundReport energy = mc_energy_bound(full, cfg.solver, model.force.l2_norm_sq(),
                                                   trace, delta, cfg.diagnostics.confidence_z);
  const double consistency = std::abs(two.dissipation - energy.dissipation_at_T);
  const bool consistent = consistency <= 1e-12 * std::max(1.0, std::abs(energy.dissipation_at_T));
  const bool pass = full.size() == m_full && finite && stable && consistent;

  CsvTable t = s.table({"paths", "p", "lhs", "se", "initial", "rhs_integral", "implied_c",
                        "dissipation", "sup_term"});
  for (const MomentBoundReport* r : {&a, &b, &two}) {
    t.add_row(std::vector<double>{static_cast<double>(r->paths), r->p, r->lhs, r->se, r->initial,
                                  r->rhs_integral, r->implied_c, r->dissipation, r->sup_term});
  }
  s.emit("mc_moment.csv", t);
  s.emit_summary("mc_moment_summary.json", pass,
                 {{"implied_c_half", moment_json(a)},
                  {"implied_c_full", moment_json(b)},
                  {"relative_change", finite ? ojson(rel_change) : ojson(nullptr)},
                  {"stability_tol", cfg.diagnostics.stability_tol},
                  {"p2_dissipation", two.dissipation},
                  {"energy_dissipation", energy.dissipation_at_T},
                  {"p2_consistency_gap", consistency},
                  {"diverged", failures_json(outcomes)}});
  s.log() << "implied C: " << format_double(a.implied_c) << " (M = " << a.paths << "), "
          << format_double(b.implied_c) << " (M = " << b.paths << "), relative change "
          << format_double(rel_change) << "\n"
          << "p = 2 consistency gap " << format_double(consistency) << "\n"
          << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitPass : kExitAssertion;
}

CsvTable uniqueness_table(const Session& s, const UniquenessReport& r) {
  CsvTable t = s.table({"t", "weight", "difference", "weighted_diff"});
  for (std::size_t m = 0; m < r.t.size(); ++m) {
    t.add_row(std::vector<double>{r.t[m], r.weight[m], r.difference[m], r.weighted_diff[m]});
  }
  return t;
}

ojson uniqueness_json(const UniquenessReport& r, double dt) {
  return {{"dt", dt},
          {"max_increase", r.max_increase},
          {"tolerance", r.tolerance},
          {"final_weight", r.weight.empty() ? 0.0 : r.weight.back()},
          {"pass", r.pass}};
}

int cmd_uniqueness(Session& s) {
  const RunConfig& cfg = s.cfg();
  const UniquenessSettings& us = cfg.uniqueness;
  const Model model = build_model(cfg);
  InitialSpec spec = cfg.initial;
  spec.amplitude *= us.amplitude;
  const State a = project_initial(spec, *model.spaces);
  State b = a;
  const ModeValue& pm = us.perturb_mode;
  if (pm.j <= cfg.solver.n_modes && pm.k <= cfg.solver.n_modes) {
    b.u.at(pm.d, pm.j, pm.k) += us.perturbation;
  }

  // dt and dt/2 share the Brownian path: the coarse run sums one more level of fine draws.
  SolverConfig coarse = cfg.solver;
  coarse.brownian_refinement += 1;
  SolverConfig fine = cfg.solver;
  fine.dt = cfg.solver.dt / 2.0;
  const Integrator ic(model.spaces, coarse, model.force, model.noise);
  const Integrator ifn(model.spaces, fine, model.force, model.noise);

  const UniquenessReport same = pathwise_uniqueness_check(ic, a, a, us.path, us.c_check);
  const UniquenessReport rc = pathwise_uniqueness_check(ic, a, b, us.path, us.c_check);
  const UniquenessReport rf = pathwise_uniqueness_check(ifn, a, b, us.path, us.c_check);

  const double ratio = rf.max_increase != 0.0 ? rc.max_increase / rf.max_increase
                                              : std::numeric_limits<double>::quiet_NaN();
  const bool halves = std::isfinite(ratio) && ratio >= 1.5 && ratio <= 2.5;
  const bool pass = same.identical_zero && rc.pass && rf.pass && halves;

  s.emit("uniqueness_dt.csv", uniqueness_table(s, rc));
  s.emit("uniqueness_half_dt.csv", uniqueness_table(s, rf));
  s.emit_summary("uniqueness_summary.json", pass,
                 {{"identical_inputs_zero", same.identical_zero},
                  {"perturbation", us.perturbation},
                  {"initial_amplitude", spec.amplitude},
                  {"dt", uniqueness_json(rc, coarse.dt)},
                  {"half_dt", uniqueness_json(rf, fine.dt)},
                  {"halving_ratio", std::isfinite(ratio) ? ojson(ratio) : ojson(nullptr)},
                  {"ratio_window", {1.5, 2.5}},
                  {"path", us.path}});
  s.log() << "identical inputs: " << (same.identical_zero ? "exact zero" : "NONZERO") << "\n"
          << "max step increase: " << format_double(rc.max_increase) << " (dt), "
          << format_double(rf.max_increase) << " (dt/2), ratio " << format_double(ratio) << "\n"
          << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitPass : kExitAssertion;
}

int cmd_sweep(Session& s) {
  const RunConfig& cfg = s.cfg();
  auto spaces = build_spaces(cfg.solver.n_modes, cfg.solver.max_modes);
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
  plan.threads = s.threads();
  const ConvergenceReport rep = epsilon_sweep(plan, spaces);

  CsvTable t = s.table({"eps", "used_paths", "diverged", "div_sq", "div_se", "div_time", "diff_sq",
                        "diff_se", "diff_time", "pressure_energy", "pressure_se"});
  for (const EpsRow& r : rep.rows) {
    t.add_row(std::vector<double>{r.eps, static_cast<double>(r.used_paths),
                                  static_cast<double>(r.diverged), r.div_sq, r.div_se, r.div_time,
                                  r.diff_sq, r.diff_se, r.diff_time, r.pressure_energy,
                                  r.pressure_se});
    s.log() << "eps " << format_double(r.eps) << ": sup E|Bu|^2 " << format_double(r.div_sq)
            << ", sup E|u - u_ref|^2 " << format_double(r.diff_sq) << ", pressure energy "
            << format_double(r.pressure_energy) << "\n";
  }
  s.emit("eps_sweep.csv", t);
  s.emit_summary("eps_sweep_summary.json", rep.pass(),
                 {{"paths", plan.paths},
                  {"divergence_decreasing", rep.divergence_decreasing},
                  {"difference_decreasing", rep.difference_decreasing},
                  {"pressure_bounded", rep.pressure_bounded},
                  {"divergence_budget_ok", rep.divergence_budget_ok},
                  {"pressure_bound", rep.pressure_bound},
                  {"reference_diverged", rep.reference_diverged},
                  {"divergence_rates", rep.divergence_rates},
                  {"difference_rates", rep.difference_rates}});
  s.log() << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return rep.pass() ? kExitPass : kExitAssertion;
}

using Command = int (*)(Session&);

const std::map<std::string, std::pair<Command, const char*>>& commands() {
  static const std::map<std::string, std::pair<Command, const char*>> table{
      {"run", {cmd_run, "Simulate paths; write per-path CSV series and final-state snapshots"}},
      {"verify", {cmd_verify, "Randomized inequality and identity suite; write the ledger CSV"}},
      {"mc-energy", {cmd_mc_energy, "Monte Carlo check of the exponentially weighted energy estimate"}},
      {"mc-moment", {cmd_mc_moment, "Implied constant of the p-th moment estimate at M/2 and M paths"}},
      {"uniqueness", {cmd_uniqueness, "Weighted pathwise difference of perturbed runs under dt-halving"}},
      {"sweep-eps", {cmd_sweep, "Artificial-compressibility sweep against the Leray reference"}},
  };
  return table;
}

/// Where --paths lands for each subcommand.
std::optional<std::string> paths_key(const std::string& sub) {
  if (sub == "run") return "run.paths";
  if (sub == "mc-energy" || sub == "mc-moment") return "diagnostics.paths";
  if (sub == "sweep-eps") return "sweep.paths";
  return std::nullopt;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galerkin simulator and verification suite for the stochastic Navier-Stokes "
               "equations with artificial compressibility",
               "sacns"};
  app.require_subcommand(1, 1);
  std::optional<std::string> config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<int> paths;
  std::optional<int> samples;
  std::optional<int> threads;
  std::string out_dir = "sacns-out";
  bool quiet = false;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--set", sets, "Override KEY=VALUE (section.key, or a [solver] key); repeatable")
      ->allow_extra_args(false);
  app.add_option("--seed", seed, "Master seed (solver.seed)");
  app.add_option("--paths", paths, "Monte Carlo path count for run, mc-*, sweep-eps");
  app.add_option("--samples", samples, "Sample count for verify (verify.samples)");
  app.add_option("--threads", threads, "Worker threads (run.threads); outputs do not depend on it");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress the stdout summary");
  for (const auto& [name, entry] : commands()) app.add_subcommand(name, entry.second)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    const std::vector<std::string> extra = app.remaining();
    if (app.get_subcommands().empty() && !extra.empty()) {
      err << "error: unknown subcommand '" << extra.front() << "'\n\n" << app.help();
    } else {
      err << "error: " << e.what() << "\n\n" << app.help();
    }
    return kExitUsage;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    std::vector<std::string> overrides = sets;
    if (seed) overrides.push_back("solver.seed=" + std::to_string(*seed));
    if (paths) {
      const auto key = paths_key(sub);
      if (!key) throw ConfigError("--paths does not apply to " + sub);
      overrides.push_back(*key + "=" + std::to_string(*paths));
    }
    if (samples) overrides.push_back("verify.samples=" + std::to_string(*samples));
    if (threads) overrides.push_back("run.threads=" + std::to_string(*threads));
    RunConfig cfg = load_config(config_path, overrides);
    Session session(sub, std::move(cfg), out_dir, quiet, out);
    const int status = commands().at(sub).first(session);
    session.finish();
    return status;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace sacns

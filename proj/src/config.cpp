#include "sacns/config.hpp"

#include "sacns/errors.hpp"
#include "sacns/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace sacns {
namespace {

/// Value-level failure; the caller adds the location.
struct ValueError {
  std::string message;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  T v{};
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValueError{"'" + s + "' is not a valid number"};
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) throw ValueError{"'" + s + "' is not finite"};
  }
  return v;
}

double parse_double(const std::string& s) { return parse_number<double>(s); }
int parse_int(const std::string& s) { return parse_number<int>(s); }
std::uint64_t parse_u64(const std::string& s) { return parse_number<std::uint64_t>(s); }

bool parse_bool(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ValueError{"'" + s + "' is not a boolean"};
}

std::string parse_choice(const std::string& raw, std::initializer_list<const char*> allowed) {
  const std::string s = trim(raw);
  std::string list;
  for (const char* a : allowed) {
    if (s == a) return s;
    list += list.empty() ? a : std::string(" | ") + a;
  }
  throw ValueError{"'" + s + "' is not one of " + list};
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, " \t,")) out.push_back(parse_double(t));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, " \t,")) out.push_back(parse_int(t));
  return out;
}

/// "a b c v; a b c v", each record with exactly `fields` entries.
std::vector<std::vector<std::string>> parse_records(const std::string& s, std::size_t fields) {
  std::vector<std::vector<std::string>> out;
  for (const auto& rec : split(s, ";")) {
    if (trim(rec).empty()) continue;
    auto parts = split(rec, " \t,");
    if (parts.size() != fields) {
      throw ValueError{"mode entry '" + trim(rec) + "' needs " + std::to_string(fields) +
                       " fields"};
    }
    out.push_back(std::move(parts));
  }
  return out;
}

std::vector<ModeValue> parse_velocity_modes(const std::string& s) {
  std::vector<ModeValue> out;
  for (const auto& r : parse_records(s, 4)) {
    out.push_back({parse_int(r[0]), parse_int(r[1]), parse_int(r[2]), parse_double(r[3])});
  }
  return out;
}

std::vector<ModeAmplitude> parse_noise_modes(const std::string& s) {
  std::vector<ModeAmplitude> out;
  for (const auto& r : parse_records(s, 4)) {
    out.push_back({parse_int(r[0]), parse_int(r[1]), parse_int(r[2]), parse_double(r[3])});
  }
  return out;
}

std::vector<PressureModeValue> parse_pressure_modes(const std::string& s) {
  std::vector<PressureModeValue> out;
  for (const auto& r : parse_records(s, 3)) {
    out.push_back({parse_int(r[0]), parse_int(r[1]), parse_double(r[2])});
  }
  return out;
}

ModeValue parse_mode_index(const std::string& s) {
  const auto parts = split(s, " \t,");
  if (parts.size() != 3) throw ValueError{"expected 'j k d'"};
  return {parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]), 0.0};
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : " ") + format_double(x);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (int x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

template <class M>
std::string join_modes(const std::vector<M>& modes) {
  std::string out;
  for (const auto& m : modes) {
    if (!out.empty()) out += "; ";
    if constexpr (std::is_same_v<M, PressureModeValue>) {
      out += std::to_string(m.a) + " " + std::to_string(m.b) + " " + format_double(m.value);
    } else if constexpr (std::is_same_v<M, ModeAmplitude>) {
      out += std::to_string(m.j) + " " + std::to_string(m.k) + " " + std::to_string(m.d) + " " +
             format_double(m.amplitude);
    } else {
      out += std::to_string(m.j) + " " + std::to_string(m.k) + " " + std::to_string(m.d) + " " +
             format_double(m.value);
    }
  }
  return out;
}

struct Key {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
  bool digested = true;  // false: execution-only, excluded from the canonical echo
};

#define SACNS_KEY(field, parse, render) \
  Key{[](RunConfig& c, const std::string& v) { c.field = parse(v); }, \
      [](const RunConfig& c) { return render(c.field); }}

std::string render_double(double x) { return format_double(x); }
template <class T>
std::string render_int(T x) { return std::to_string(x); }
std::string render_text(const std::string& x) { return x; }
std::string render_bool(bool x) { return x ? "true" : "false"; }
std::string render_mode_index(const ModeValue& m) {
  return std::to_string(m.j) + " " + std::to_string(m.k) + " " + std::to_string(m.d);
}
std::string noise_preset(const std::string& v) {
  return parse_choice(v, {"none", "default", "solenoidal", "modes"});
}
std::string force_preset(const std::string& v) { return parse_choice(v, {"none", "default", "modes"}); }
std::string initial_preset(const std::string& v) {
  return parse_choice(v, {"zero", "default", "solenoidal", "stokes1", "modes"});
}

const std::map<std::string, Key>& key_table() {
  static const std::map<std::string, Key> table = [] {
    std::map<std::string, Key> t;
    t["solver.nu"] = SACNS_KEY(solver.nu, parse_double, render_double);
    t["solver.eps"] = SACNS_KEY(solver.eps, parse_double, render_double);
    t["solver.delta"] = SACNS_KEY(solver.delta, parse_double, render_double);
    t["solver.n_modes"] = SACNS_KEY(solver.n_modes, parse_int, render_int);
    t["solver.dt"] = SACNS_KEY(solver.dt, parse_double, render_double);
    t["solver.T"] = SACNS_KEY(solver.T, parse_double, render_double);
    t["solver.moment_p"] = SACNS_KEY(solver.moment_p, parse_double, render_double);
    t["solver.quad_order"] = SACNS_KEY(solver.quad_order, parse_int, render_int);
    t["solver.seed"] = SACNS_KEY(solver.seed, parse_u64, render_int);
    t["solver.energy_cap"] = SACNS_KEY(solver.energy_cap, parse_double, render_double);
    t["solver.brownian_refinement"] = SACNS_KEY(solver.brownian_refinement, parse_int, render_int);
    t["solver.max_modes"] = SACNS_KEY(solver.max_modes, parse_int, render_int);
    t["noise.preset"] = SACNS_KEY(noise.preset, noise_preset, render_text);
    t["noise.trace"] = SACNS_KEY(noise.trace, parse_double, render_double);
    t["noise.modes"] = SACNS_KEY(noise.modes, parse_noise_modes, join_modes);
    t["force.preset"] = SACNS_KEY(force.preset, force_preset, render_text);
    t["force.modes"] = SACNS_KEY(force.modes, parse_velocity_modes, join_modes);
    t["initial.preset"] = SACNS_KEY(initial.preset, initial_preset, render_text);
    t["initial.velocity"] = SACNS_KEY(initial.velocity, parse_velocity_modes, join_modes);
    t["initial.pressure"] = SACNS_KEY(initial.pressure, parse_pressure_modes, join_modes);
    t["initial.amplitude"] = SACNS_KEY(initial.amplitude, parse_double, render_double);
    t["run.paths"] = SACNS_KEY(run.paths, parse_int, render_int);
    t["run.threads"] = SACNS_KEY(run.threads, parse_int, render_int);
    t["run.threads"].digested = false;
    t["run.snapshot"] = SACNS_KEY(run.snapshot, parse_bool, render_bool);
    t["diagnostics.paths"] = SACNS_KEY(diagnostics.paths, parse_int, render_int);
    t["diagnostics.deltas"] = SACNS_KEY(diagnostics.deltas, parse_double_list, join_doubles);
    t["diagnostics.confidence_z"] = SACNS_KEY(diagnostics.confidence_z, parse_double, render_double);
    t["diagnostics.stability_tol"] = SACNS_KEY(diagnostics.stability_tol, parse_double, render_double);
    t["uniqueness.perturbation"] = SACNS_KEY(uniqueness.perturbation, parse_double, render_double);
    t["uniqueness.perturb_mode"] = SACNS_KEY(uniqueness.perturb_mode, parse_mode_index, render_mode_index);
    t["uniqueness.amplitude"] = SACNS_KEY(uniqueness.amplitude, parse_double, render_double);
    t["uniqueness.c_check"] = SACNS_KEY(uniqueness.c_check, parse_double, render_double);
    t["uniqueness.path"] = SACNS_KEY(uniqueness.path, parse_u64, render_int);
    t["sweep.eps_values"] = SACNS_KEY(sweep.eps_values, parse_double_list, join_doubles);
    t["sweep.paths"] = SACNS_KEY(sweep.paths, parse_int, render_int);
    t["sweep.noise"] = SACNS_KEY(sweep.noise, noise_preset, render_text);
    t["sweep.initial"] = SACNS_KEY(sweep.initial, initial_preset, render_text);
    t["sweep.force"] = SACNS_KEY(sweep.force, force_preset, render_text);
    t["verify.samples"] = SACNS_KEY(verify.samples, parse_int, render_int);
    t["verify.n_modes"] = SACNS_KEY(verify.n_modes, parse_int_list, join_ints);
    t["verify.nus"] = SACNS_KEY(verify.nus, parse_double_list, join_doubles);
    t["verify.spectral_exponent"] = SACNS_KEY(verify.spectral_exponent, parse_double, render_double);
    return t;
  }();
  return table;
}

#undef SACNS_KEY

/// Throws ValueError for unknown keys or malformed values.
void set_key(RunConfig& cfg, const std::string& qualified, const std::string& value,
             const std::string& source) {
  const auto& table = key_table();
  const auto it = table.find(qualified);
  if (it == table.end()) throw ValueError{"unknown key '" + qualified + "'"};
  it->second.set(cfg, value);
  cfg.provenance[qualified] = {it->second.get(cfg), source};
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void require_velocity_modes(const std::vector<ModeValue>& modes, const std::string& key) {
  for (const ModeValue& m : modes) {
    require(m.j >= 1 && m.k >= 1 && (m.d == 1 || m.d == 2),
            key + ": mode (" + std::to_string(m.j) + "," + std::to_string(m.k) + "," +
                std::to_string(m.d) + ") needs j, k >= 1 and d in {1, 2}");
  }
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  for (const auto& [name, key] : key_table()) cfg.provenance[name] = {key.get(cfg), "default"};
  return cfg;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [name, key] : key_table()) out.push_back(name);
  return out;
}

std::string RunConfig::canonical_echo() const {
  std::string out;
  for (const auto& [name, key] : key_table()) {
    if (key.digested) out += name + " = " + key.get(*this) + "\n";
  }
  return out;
}

void RunConfig::validate() const {
  solver.validate();
  require(std::isfinite(noise.trace) && noise.trace >= 0.0, "noise.trace must be non-negative");
  for (const ModeAmplitude& m : noise.modes) {
    require(m.j >= 1 && m.k >= 1 && (m.d == 1 || m.d == 2),
            "noise.modes: mode (" + std::to_string(m.j) + "," + std::to_string(m.k) + "," +
                std::to_string(m.d) + ") needs j, k >= 1 and d in {1, 2}");
  }
  require_velocity_modes(force.modes, "force.modes");
  require_velocity_modes(initial.velocity, "initial.velocity");
  for (const PressureModeValue& m : initial.pressure) {
    require(m.a >= 0 && m.b >= 0 && (m.a > 0 || m.b > 0),
            "initial.pressure: mode (" + std::to_string(m.a) + "," + std::to_string(m.b) +
                ") needs a, b >= 0, not both zero");
  }
  require(std::isfinite(initial.amplitude), "initial.amplitude must be finite");
  require(run.paths >= 1, "run.paths must be >= 1");
  require(run.threads >= 1, "run.threads must be >= 1");
  require(diagnostics.paths >= 2, "diagnostics.paths must be >= 2");
  require(!diagnostics.deltas.empty(), "diagnostics.deltas must not be empty");
  for (double d : diagnostics.deltas) require(d > 0.0, "diagnostics.deltas must be positive");
  require(diagnostics.confidence_z > 0.0, "diagnostics.confidence_z must be positive");
  require(diagnostics.stability_tol > 0.0, "diagnostics.stability_tol must be positive");
  require(uniqueness.perturbation >= 0.0, "uniqueness.perturbation must be non-negative");
  require_velocity_modes({uniqueness.perturb_mode}, "uniqueness.perturb_mode");
  require(uniqueness.c_check > 0.0, "uniqueness.c_check must be positive");
  require(!sweep.eps_values.empty(), "sweep.eps_values must not be empty");
  for (std::size_t i = 0; i < sweep.eps_values.size(); ++i) {
    require(sweep.eps_values[i] > 0.0, "sweep.eps_values must be positive");
    require(i == 0 || sweep.eps_values[i] < sweep.eps_values[i - 1],
            "sweep.eps_values must be strictly decreasing");
  }
  require(sweep.paths >= 2, "sweep.paths must be >= 2");
  require(verify.samples >= 1, "verify.samples must be >= 1");
  require(!verify.n_modes.empty(), "verify.n_modes must not be empty");
  for (int n : verify.n_modes) {
    require(n >= 1 && n <= solver.max_modes, "verify.n_modes entries must be in [1, max_modes]");
  }
  require(!verify.nus.empty(), "verify.nus must not be empty");
  for (double nu : verify.nus) require(nu > 0.0, "verify.nus must be positive");
  require(verify.spectral_exponent >= 0.0, "verify.spectral_exponent must be non-negative");
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::string section = "solver";
  int lineno = 0;
  auto fail = [&](std::size_t col, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ":" + std::to_string(col + 1) +
                      ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
    if (line[first] == '[') {
      const auto close = line.find(']', first);
      if (close == std::string::npos) fail(first, "unterminated section header");
      const std::string rest = trim(std::string_view(line).substr(close + 1));
      if (!rest.empty() && rest[0] != '#' && rest[0] != ';') {
        fail(close + 1, "unexpected text after section header");
      }
      section = trim(std::string_view(line).substr(first + 1, close - first - 1));
      if (section.empty()) fail(first, "empty section name");
      continue;
    }
    const auto eq = line.find('=', first);
    if (eq == std::string::npos) fail(first, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(first, eq - first));
    if (key.empty()) fail(first, "missing key before '='");
    std::string value = line.substr(eq + 1);
    const auto comment = value.find_first_of("#");
    if (comment != std::string::npos) value = value.substr(0, comment);
    const std::size_t value_col = line.find_first_not_of(" \t", eq + 1);
    try {
      set_key(cfg, section + "." + key, value, origin + ":" + std::to_string(lineno));
    } catch (const ValueError& e) {
      const bool unknown = e.message.rfind("unknown key", 0) == 0;
      fail(unknown ? first : (value_col == std::string::npos ? eq + 1 : value_col), e.message);
    }
  }
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' must have the form key=value");
  }
  std::string key = trim(std::string_view(assignment).substr(0, eq));
  if (key.find('.') == std::string::npos) key = "solver." + key;
  try {
    set_key(cfg, key, assignment.substr(eq + 1), "override");
  } catch (const ValueError& e) {
    throw ConfigError("override '" + assignment + "': " + e.message);
  }
}

RunConfig load_config(const std::optional<std::string>& path,
                      const std::vector<std::string>& overrides) {
  RunConfig cfg = default_config();
  if (path) {
    std::ifstream is(*path, std::ios::binary);
    if (!is) throw IoError("cannot read config file " + *path);
    std::ostringstream ss;
    ss << is.rdbuf();
    apply_config_text(cfg, ss.str(), *path);
  }
  for (const std::string& o : overrides) apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

DeterministicForce build_force(const ForceSpec& spec, int n_modes) {
  VelocityField f(n_modes);
  auto add = [&](const ModeValue& m) {
    if (m.j <= n_modes && m.k <= n_modes) f.at(m.d, m.j, m.k) += m.value;
  };
  if (spec.preset == "default") {
    add({1, 1, 1, 1.0});
  } else if (spec.preset != "none" && spec.preset != "modes") {
    throw ConfigError("unknown force preset '" + spec.preset + "'");
  }
  for (const ModeValue& m : spec.modes) add(m);
  return DeterministicForce{std::move(f)};
}

NoiseModel build_noise_preset(const std::string& preset, double trace, const Spaces& spaces) {
  const int n = spaces.n_modes();
  if (preset == "none" || preset == "modes") return NoiseModel(n, {});
  const NoiseModel base = NoiseModel::from_amplitudes(n, default_noise_modes(trace));
  if (preset == "default") return base;
  if (preset == "solenoidal") {
    std::vector<VelocityField> cols;
    for (int k = 0; k < base.size(); ++k) {
      cols.emplace_back(n, spaces.leray_projector() * base.matrix().col(k));
    }
    const NoiseModel projected(n, std::move(cols));
    return projected.trace() > 0.0 ? rescale_to_trace(projected, trace) : projected;
  }
  throw ConfigError("unknown noise preset '" + preset + "'");
}

NoiseModel build_noise(const NoiseSpec& spec, const Spaces& spaces) {
  const int n = spaces.n_modes();
  const NoiseModel preset = build_noise_preset(spec.preset, spec.trace, spaces);
  const NoiseModel extra = NoiseModel::from_amplitudes(n, spec.modes);
  std::vector<VelocityField> cols;
  for (int k = 0; k < preset.size(); ++k) cols.push_back(preset.mode(k));
  for (int k = 0; k < extra.size(); ++k) cols.push_back(extra.mode(k));
  return NoiseModel(n, std::move(cols));
}

}  // namespace sacns

#pragma once

#include "sacns/forcing.hpp"
#include "sacns/integrator.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sacns {

/// none | default | solenoidal | modes. `modes` entries are added to the preset;
/// presets are scaled to `trace`, explicit-only lists are used as given.
struct NoiseSpec {
  std::string preset = "default";
  double trace = 0.01;
  std::vector<ModeAmplitude> modes;
};

/// none | default (unit amplitude on mode (1,1,1)) | modes
struct ForceSpec {
  std::string preset = "default";
  std::vector<ModeValue> modes;
};

struct RunSettings {
  int paths = 1;
  int threads = 1;
  bool snapshot = true;
};

struct DiagnosticsSettings {
  int paths = 200;
  std::vector<double> deltas{0.5, 1.0, 2.0};
  double confidence_z = 3.0;
  double stability_tol = 0.25;
};

struct UniquenessSettings {
  double perturbation = 1e-3;
  ModeValue perturb_mode{1, 1, 1, 0.0};
  double amplitude = 0.1;  // scales the initial datum so exp(-r) stays representable
  double c_check = 1.0;
  std::uint64_t path = 0;
};

/// The sweep replaces the [noise], [force] and [initial] presets with its own;
/// explicit mode lists and the noise trace are kept.
struct SweepSettings {
  std::vector<double> eps_values{1e-1, 1e-2, 1e-3, 1e-4};
  int paths = 50;
  std::string noise = "solenoidal";
  std::string initial = "solenoidal";
  std::string force = "none";
};

struct VerifySettings {
  int samples = 1000;
  std::vector<int> n_modes{2, 4, 6};
  std::vector<double> nus{0.05, 0.1, 1.0};
  double spectral_exponent = 2.0;
};

struct Provenance {
  std::string value;   // canonical rendering
  std::string source;  // "default", "<file>:<line>", or "override"
};

struct RunConfig {
  SolverConfig solver;
  NoiseSpec noise;
  ForceSpec force;
  InitialSpec initial;
  RunSettings run;
  DiagnosticsSettings diagnostics;
  UniquenessSettings uniqueness;
  SweepSettings sweep;
  VerifySettings verify;

  /// Keyed "section.key", covering every recognized setting.
  std::map<std::string, Provenance> provenance;

  /// Sorted "section.key = value" lines; the manifest digest input.
  std::string canonical_echo() const;
  void validate() const;
};

RunConfig default_config();

/// INI text: [section] headers, key = value lines, '#' or ';' comment lines,
/// trailing '#' comments (';' separates mode-list entries).
/// Keys before the first header belong to [solver]. Errors carry
/// "<origin>:<line>:<column>".
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin);

/// "section.key=value"; an unqualified key is looked up in [solver].
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Defaults, then the file (if any), then overrides in order (last wins),
/// then validation.
RunConfig load_config(const std::optional<std::string>& path,
                      const std::vector<std::string>& overrides);

/// All recognized "section.key" names.
std::vector<std::string> config_keys();

/// Materialized model inputs.
DeterministicForce build_force(const ForceSpec& spec, int n_modes);
NoiseModel build_noise(const NoiseSpec& spec, const Spaces& spaces);
NoiseModel build_noise_preset(const std::string& preset, double trace, const Spaces& spaces);

}  // namespace sacns

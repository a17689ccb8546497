#include "sacns/config.hpp"
#include "sacns/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

using namespace sacns;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults carry default provenance for every key") {
  const RunConfig cfg = default_config();
  CHECK(cfg.provenance.size() == config_keys().size());
  for (const auto& [k, p] : cfg.provenance) CHECK(p.source == "default");
  CHECK(cfg.provenance.at("solver.dt").value == "0.001");
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("file values record file:line, overrides win") {
  const auto path = std::filesystem::temp_directory_path() / "sacns_test_config.ini";
  {
    std::ofstream os(path);
    os << "# leading comment\nnu = 0.2\n\n[noise]\ntrace = 0.5  # inline\n[solver]\ndt = 2e-3\n";
  }
  const RunConfig cfg = load_config(path.string(), {"dt=5e-4", "noise.preset=none"});
  CHECK(cfg.solver.nu == 0.2);
  CHECK(cfg.provenance.at("solver.nu").source == path.string() + ":2");
  CHECK(cfg.noise.trace == 0.5);
  CHECK(cfg.provenance.at("noise.trace").source == path.string() + ":5");
  CHECK(cfg.solver.dt == 5e-4);
  CHECK(cfg.provenance.at("solver.dt").source == "override");
  CHECK(cfg.noise.preset == "none");
  CHECK(cfg.provenance.at("solver.T").source == "default");
  std::filesystem::remove(path);
}

TEST_CASE("errors name the line and column") {
  RunConfig cfg = default_config();
  CHECK(error_of([&] { apply_config_text(cfg, "nu = 0.1\ndt =  abc\n", "f.ini"); }) ==
        "f.ini:2:7: 'abc' is not a valid number");
  CHECK(error_of([&] { apply_config_text(cfg, "[solver\n", "f.ini"); }) ==
        "f.ini:1:1: unterminated section header");
  CHECK(error_of([&] { apply_config_text(cfg, "  bogus = 1\n", "f.ini"); }) ==
        "f.ini:1:3: unknown key 'solver.bogus'");
  CHECK(error_of([&] { apply_config_text(cfg, "[noise]\njust text\n", "f.ini"); }) ==
        "f.ini:2:1: expected 'key = value'");
  CHECK(error_of([&] { apply_override(cfg, "dt"); }) ==
        "override 'dt' must have the form key=value");
}

TEST_CASE("validation failures surface after loading") {
  CHECK(error_of([] { load_config(std::nullopt, {"dt=0"}); }).find("dt must be positive") !=
        std::string::npos);
  CHECK_THROWS_AS(load_config(std::nullopt, {"noise.trace=-1"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::string("/nonexistent/x.ini"), {}), IoError);
}

TEST_CASE("canonical echo round-trips through the parser") {
  RunConfig a = default_config();
  apply_override(a, "nu=0.3");
  apply_override(a, "force.modes=1 2 1 0.5; 2 1 2 -1");
  apply_override(a, "sweep.eps_values=0.1, 0.001");
  const std::string echo = a.canonical_echo();
  RunConfig b = default_config();
  std::string text;
  std::string line;
  std::istringstream in(echo);
  while (std::getline(in, line)) {
    const auto dot = line.find('.');
    text += "[" + line.substr(0, dot) + "]\n" + line.substr(dot + 1) + "\n";
  }
  apply_config_text(b, text, "echo");
  CHECK(b.canonical_echo() == echo);
  CHECK(b.force.modes.size() == 2);
  CHECK(echo.find("run.threads") == std::string::npos);
}

TEST_CASE("force and noise builders") {
  ForceSpec fs;
  CHECK(build_force(fs, 2).f.at(1, 1, 1) == 1.0);
  fs.preset = "modes";
  fs.modes = {{5, 5, 1, 2.0}, {1, 2, 2, 3.0}};
  const DeterministicForce f = build_force(fs, 3);
  CHECK(f.f.at(2, 1, 2) == 3.0);
  CHECK(f.l2_norm_sq() == 9.0);
  const auto sp = build_spaces(3);
  NoiseSpec ns;
  CHECK(build_noise(ns, *sp).trace() == doctest::Approx(0.01));
  ns.preset = "solenoidal";
  CHECK(build_noise(ns, *sp).trace() == doctest::Approx(0.01));
  ns.preset = "none";
  CHECK(build_noise(ns, *sp).size() == 0);
  ns.preset = "bogus";
  CHECK_THROWS_AS(build_noise(ns, *sp), ConfigError);
}

#include "sacns/config.hpp"
#include "sacns/eps_limit.hpp"
#include "sacns/errors.hpp"
#include "sacns/random_fields.hpp"

#include <doctest.h>

#include <cmath>

using namespace sacns;

TEST_CASE("leray_project is an idempotent L2 projection onto ker B") {
  const auto sp = build_spaces(4);
  const VelocityField u = random_field(4, 5, 0, 0);
  const VelocityField pu = leray_project(*sp, u);
  CHECK(weak_divergence(*sp, pu).coeffs.norm() <= 1e-12 * l2_norm(u));
  CHECK((leray_project(*sp, pu) - pu).coeffs.norm() <= 1e-12 * l2_norm(u));
  // residual is orthogonal to the range
  const VelocityField w = leray_project(*sp, random_field(4, 5, 0, 1));
  CHECK(std::abs(inner(u - pu, w)) <= 1e-12 * l2_norm(u) * l2_norm(w));
}

TEST_CASE("pressure_energy_bound is the double integral it closes") {
  const double e0 = 2.0, fsq = 1.0, tr = 0.01, delta = 0.7, T = 0.5;
  const int n = 4000;
  double outer = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * T / n;
    const double inner_int = (fsq / delta + tr) * (1.0 - std::exp(-delta * t)) / delta;
    outer += std::exp(delta * t) * (e0 + inner_int) * T / n;
  }
  CHECK(pressure_energy_bound(e0, fsq, tr, delta, T) == doctest::Approx(outer).epsilon(1e-7));
}

TEST_CASE("sweep plan validation") {
  EpsSweepPlan plan;
  plan.shared.n_modes = 2;
  plan.force = DeterministicForce{VelocityField(2)};
  plan.noise = NoiseModel(2, {});
  CHECK_NOTHROW(plan.validate());
  plan.eps_values = {1e-2, 1e-1};
  CHECK_THROWS_WITH_AS(plan.validate(), "eps_values must be strictly decreasing", ConfigError);
  plan.eps_values = {};
  CHECK_THROWS_AS(plan.validate(), ConfigError);
  plan.eps_values = {1e-1, -1.0};
  CHECK_THROWS_AS(plan.validate(), ConfigError);
  plan.eps_values = {1e-1};
  plan.paths = 1;
  CHECK_THROWS_AS(plan.validate(), ConfigError);
}

TEST_CASE("small sweep with solenoidal data converges") {
  const auto sp = build_spaces(3);
  EpsSweepPlan plan;
  plan.eps_values = {1e-1, 1e-2, 1e-3};
  plan.shared.n_modes = 3;
  plan.shared.T = 0.05;
  plan.force = DeterministicForce{VelocityField(3)};
  plan.noise = build_noise_preset("solenoidal", 0.01, *sp);
  plan.initial.preset = "solenoidal";
  plan.paths = 4;
  const ConvergenceReport rep = epsilon_sweep(plan, sp);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.pass());
  for (const EpsRow& r : rep.rows) {
    CHECK(r.used_paths == 4);
    CHECK(r.pressure_energy <= rep.pressure_bound);
  }
  CHECK(rep.divergence_rates.size() == 2);
}

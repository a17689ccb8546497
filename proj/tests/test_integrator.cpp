#include "sacns/ensemble.hpp"
#include "sacns/errors.hpp"
#include "sacns/integrator.hpp"
#include "sacns/random_fields.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

using namespace sacns;

namespace {

SolverConfig small_config(int n, double dt, double T) {
  SolverConfig c;
  c.n_modes = n;
  c.dt = dt;
  c.T = T;
  return c;
}

NoiseModel default_noise(int n) { return NoiseModel::from_amplitudes(n, default_noise_modes(0.01)); }

DeterministicForce unit_force(int n) {
  DeterministicForce f{VelocityField(n)};
  f.f.at(1, 1, 1) = 1.0;
  return f;
}

State random_state(int n, std::uint64_t sample) {
  State s{random_field(n, 77, sample, 0), PressureField(n), 0.0};
  s.p.coeffs = random_field(n, 77, sample, 1).coeffs.head(pressure_dim(n));
  return s;
}

}  // namespace

TEST_CASE("config validation names the field") {
  SolverConfig c;
  c.dt = 0.0;
  CHECK_THROWS_WITH_AS(c.validate(), "dt must be positive", ConfigError);
  c = SolverConfig{};
  c.eps = -1.0;
  CHECK_THROWS_WITH_AS(c.validate(), "eps must be positive", ConfigError);
  c = SolverConfig{};
  c.n_modes = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SolverConfig{};
  CHECK(c.steps() == 500);
  CHECK(c.effective_quad_order() == 40);
}

TEST_CASE("linear part is unconditionally energy stable") {
  const int n = 3;
  auto sp = build_spaces(n);
  for (double dt : {1e-4, 1e-2, 0.3, 10.0}) {
    for (double eps : {1.0, 1e-3}) {
      SolverConfig c = small_config(n, dt, dt);
      c.eps = eps;
      Integrator integ(sp, c, DeterministicForce{}, NoiseModel{});
      integ.set_nonlinear(false);
      for (std::uint64_t s = 0; s < 5; ++s) {
        State st = random_state(n, s);
        for (int m = 0; m < 5; ++m) {
          const State next = integ.step(st, integ.increment(0, m));
          CHECK(state_energy(next, eps) <= state_energy(st, eps) * (1.0 + 1e-14));
          st = next;
        }
      }
    }
  }
}

TEST_CASE("pressure-work identity holds exactly per step") {
  // dt (p+, B u+) = -eps/2 (|p+|^2 - |p|^2 + |p+ - p|^2)
  const int n = 3;
  auto sp = build_spaces(n);
  SolverConfig c = small_config(n, 1e-2, 1e-2);
  c.eps = 0.05;
  const Integrator integ(sp, c, unit_force(n), default_noise(n));
  const State s = random_state(n, 3);
  const State next = integ.step(s, integ.increment(0, 0));
  const Eigen::VectorXd bu = sp->weak_divergence() * next.u.coeffs;
  const double lhs = c.dt * next.p.coeffs.dot(bu);
  const double rhs = -0.5 * c.eps *
                     (next.p.coeffs.squaredNorm() - s.p.coeffs.squaredNorm() +
                      (next.p.coeffs - s.p.coeffs).squaredNorm());
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("linear system converges at first order to the matrix exponential") {
  const int n = 2;
  auto sp = build_spaces(n);
  const double nu = 0.1, eps = 0.1, T = 0.2;
  const int nv = velocity_dim(n), np = pressure_dim(n);
  const Eigen::MatrixXd b = Eigen::MatrixXd(sp->weak_divergence());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nv + np, nv + np);
  a.topLeftCorner(nv, nv) = -nu * Eigen::MatrixXd(sp->stiffness().asDiagonal());
  a.topRightCorner(nv, np) = b.transpose();
  a.bottomLeftCorner(np, nv) = -b / eps;

  InitialSpec spec;
  spec.pressure = {{0, 1, 0.3}, {1, 1, -0.2}};
  const State s0 = project_initial(spec, *sp);
  Eigen::VectorXd y0(nv + np);
  y0 << s0.u.coeffs, s0.p.coeffs;
  const Eigen::VectorXd exact = (a * T).exp() * y0;

  std::vector<double> errors;
  for (double dt : {2e-3, 1e-3, 5e-4}) {
    SolverConfig c = small_config(n, dt, T);
    c.nu = nu;
    c.eps = eps;
    Integrator integ(sp, c, DeterministicForce{}, NoiseModel{});
    integ.set_nonlinear(false);
    State last;
    integ.run_path(s0, 0, [&](int, const State& s) { last = s; });
    Eigen::VectorXd y(nv + np);
    y << last.u.coeffs, last.p.coeffs;
    errors.push_back((y - exact).norm());
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double ratio = errors[i - 1] / errors[i];
    CHECK(ratio > 1.85);
    CHECK(ratio < 2.15);
  }
}

TEST_CASE("projected scheme decays the first Stokes mode by (1 + dt nu lambda)^-m") {
  const int n = 4;
  auto sp = build_spaces(n);
  const auto [lambda, mode] = first_stokes_mode(*sp);
  CHECK(l2_norm(mode) == doctest::Approx(1.0));
  CHECK((sp->weak_divergence() * mode.coeffs).norm() <= 1e-12);
  CHECK(lambda >= 2.0 * std::numbers::pi * std::numbers::pi * (1.0 - 1e-12));
  SolverConfig c = small_config(n, 1e-2, 0.5);
  Integrator integ(sp, c, DeterministicForce{}, NoiseModel{}, Scheme::kProjected);
  integ.set_nonlinear(false);
  InitialSpec spec;
  spec.preset = "stokes1";
  const PathRecord rec = integ.run_path(project_initial(spec, *sp), 0);
  for (std::size_t m = 0; m < rec.size(); ++m) {
    const double expected = std::pow(1.0 + c.dt * c.nu * lambda, -static_cast<double>(m));
    CHECK(rec.l2_u[m] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("projected scheme keeps the velocity solenoidal") {
  const int n = 4;
  auto sp = build_spaces(n);
  SolverConfig c = small_config(n, 1e-3, 0.05);
  const Integrator integ(sp, c, unit_force(n), default_noise(n), Scheme::kProjected);
  InitialSpec spec;
  spec.preset = "solenoidal";
  const PathRecord rec = integ.run_path(project_initial(spec, *sp), 0);
  for (double d : rec.l2_div_u) CHECK(d <= 1e-12);
}

TEST_CASE("ledger entries are self-consistent") {
  const int n = 4;
  auto sp = build_spaces(n);
  const Integrator integ(sp, small_config(n, 1e-3, 0.02), unit_force(n), default_noise(n));
  const PathRecord rec = integ.run_path(project_initial(InitialSpec{}, *sp), 0);
  REQUIRE(rec.ledger.size() == 20);
  REQUIRE(rec.size() == 21);
  for (std::size_t m = 0; m < rec.ledger.size(); ++m) {
    const EnergyLedgerEntry& e = rec.ledger[m];
    CHECK(e.residual == e.recomputed_residual());
    CHECK(e.energy == rec.energy[m + 1]);
    CHECK(e.energy_before == rec.energy[m]);
    CHECK(rec.residual[m + 1] == e.residual);
  }
  CHECK(rec.residual[0] == 0.0);
}

TEST_CASE("single-step deterministic residual is second order in dt") {
  const int n = 4;
  auto sp = build_spaces(n);
  const State s0 = project_initial(InitialSpec{}, *sp);
  std::vector<double> r;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    const Integrator integ(sp, small_config(n, dt, dt), unit_force(n), NoiseModel{});
    EnergyLedgerEntry e;
    integ.step(s0, integ.increment(0, 0), &e);
    r.push_back(std::abs(e.residual));
  }
  CHECK(r[0] / r[1] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r[1] / r[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("zero trajectory has an undefined residual order") {
  const int n = 2;
  auto sp = build_spaces(n);
  std::vector<std::vector<EnergyLedgerEntry>> runs;
  std::vector<double> dts{2e-3, 1e-3};
  InitialSpec zero;
  zero.preset = "zero";
  for (double dt : dts) {
    const Integrator integ(sp, small_config(n, dt, 0.01), DeterministicForce{}, NoiseModel{});
    runs.push_back(integ.run_path(project_initial(zero, *sp), 0).ledger);
  }
  const ResidualSummary s = energy_residual(runs, dts);
  CHECK(s.max_abs == 0.0);
  CHECK_FALSE(s.slope_defined);
}

TEST_CASE("residual_order fits a power law") {
  const ResidualSummary s = residual_order({1e-3, 5e-4, 2.5e-4}, {4e-6, 1e-6, 2.5e-7});
  CHECK(s.slope_defined);
  CHECK(s.slope == doctest::Approx(2.0));
}

TEST_CASE("paths are reproducible and independent of the thread count") {
  const int n = 4;
  auto sp = build_spaces(n);
  const Integrator integ(sp, small_config(n, 1e-3, 0.02), unit_force(n), default_noise(n));
  const State s0 = project_initial(InitialSpec{}, *sp);
  const PathRecord a = integ.run_path(s0, 5);
  const PathRecord b = integ.run_path(s0, 5);
  CHECK(a.energy == b.energy);
  CHECK(a.l4_u == b.l4_u);
  const PathRecord c = integ.run_path(s0, 6);
  CHECK(a.energy != c.energy);
  const auto e1 = run_ensemble(integ, s0, 6, 1);
  const auto e3 = run_ensemble(integ, s0, 6, 3);
  for (std::size_t i = 0; i < 6; ++i) {
    REQUIRE(e1[i].record);
    REQUIRE(e3[i].record);
    CHECK(e1[i].record->energy == e3[i].record->energy);
    CHECK(e1[i].record->residual == e3[i].record->residual);
  }
}

TEST_CASE("energy cap raises a structured divergence") {
  const int n = 2;
  auto sp = build_spaces(n);
  SolverConfig c = small_config(n, 1e-3, 0.01);
  c.energy_cap = 1.0;
  const Integrator integ(sp, c, DeterministicForce{}, NoiseModel{});
  InitialSpec spec;
  spec.amplitude = 2.0;
  try {
    integ.run_path(project_initial(spec, *sp), 3);
    FAIL("expected DivergedPath");
  } catch (const DivergedPath& e) {
    CHECK(e.path() == 3);
    CHECK(e.step() == 0);
    CHECK(e.energy() > 1.0);
  }
  const auto outcomes = run_ensemble(integ, project_initial(spec, *sp), 2, 1);
  CHECK_FALSE(outcomes[0].record);
  CHECK(outcomes[0].failed_step == 0);
}

TEST_CASE("factorizations are cached per parameter set") {
  const int n = 3;
  auto sp = build_spaces(n);
  SolverConfig c = small_config(n, 1.2345e-3, 0.01);
  const std::size_t before = factorization_cache_size();
  const Integrator a(sp, c, DeterministicForce{}, NoiseModel{});
  CHECK(factorization_cache_size() == before + 1);
  const Integrator b(sp, c, DeterministicForce{}, NoiseModel{});
  CHECK(factorization_cache_size() == before + 1);
  c.eps = 0.5;
  const Integrator d(sp, c, DeterministicForce{}, NoiseModel{});
  CHECK(factorization_cache_size() == before + 2);
}

TEST_CASE("initial presets") {
  auto sp = build_spaces(4);
  InitialSpec spec;
  const State d = project_initial(spec, *sp);
  CHECK(d.u.at(1, 1, 1) == 1.0);
  CHECK(d.u.at(2, 2, 2) == 0.25);
  CHECK((sp->weak_divergence() * d.u.coeffs).norm() > 1.0);
  spec.preset = "solenoidal";
  CHECK((sp->weak_divergence() * project_initial(spec, *sp).u.coeffs).norm() <= 1e-12);
  spec.preset = "modes";
  spec.velocity = {{3, 1, 2, 0.7}, {9, 1, 1, 5.0}};
  spec.pressure = {{1, 0, 0.4}};
  spec.amplitude = 2.0;
  const State m = project_initial(spec, *sp);
  CHECK(m.u.at(2, 3, 1) == 1.4);
  CHECK(m.u.coeffs.norm() == doctest::Approx(1.4));
  CHECK(m.p.coeffs[pressure_slot(4, 1, 0)] == 0.4);
  spec.preset = "vortex";
  CHECK_THROWS_AS(project_initial(spec, *sp), ConfigError);
}

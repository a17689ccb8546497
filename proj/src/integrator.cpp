#include "sacns/integrator.hpp"

#include "sacns/errors.hpp"
#include "sacns/operators.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace sacns {
namespace {

using Factor = Eigen::LLT<Eigen::MatrixXd>;
using FactorKey = std::tuple<int, double, double, double, int>;

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<FactorKey, std::shared_ptr<const Factor>>& cache() {
  static std::map<FactorKey, std::shared_ptr<const Factor>> c;
  return c;
}

std::shared_ptr<const Factor> factorization(const Spaces& spaces, const SolverConfig& cfg,
                                            Scheme scheme) {
  const double eps = scheme == Scheme::kProjected ? 0.0 : cfg.eps;
  const FactorKey key{spaces.n_modes(), cfg.nu, eps, cfg.dt, static_cast<int>(scheme)};
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto it = cache().find(key);
  if (it != cache().end()) return it->second;

  Eigen::MatrixXd a;
  const Eigen::VectorXd stiff = cfg.dt * cfg.nu * spaces.stiffness();
  if (scheme == Scheme::kProjected) {
    const Eigen::MatrixXd& k = spaces.solenoidal_basis();
    a = k.transpose() * stiff.asDiagonal() * k;
    a.diagonal().array() += 1.0;
  } else {
    const Eigen::MatrixXd b = spaces.weak_divergence();
    a = (cfg.dt * cfg.dt / cfg.eps) * (b.transpose() * b);
    a.diagonal() += stiff;
    a.diagonal().array() += 1.0;
  }
  auto f = std::make_shared<const Factor>(a);
  if (f->info() != Eigen::Success) {
    throw FactorizationError("implicit Stokes matrix is not SPD (nu, eps, dt corrupted?)");
  }
  cache().emplace(key, f);
  return f;
}

void require_range(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

void SolverConfig::validate() const {
  require_range(std::isfinite(nu) && nu > 0.0, "nu must be positive");
  require_range(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  require_range(std::isfinite(delta) && delta >= 0.0, "delta must be non-negative");
  require_range(n_modes >= 1 && n_modes <= max_modes,
                "n_modes must satisfy 1 <= n_modes <= " + std::to_string(max_modes));
  require_range(std::isfinite(dt) && dt > 0.0, "dt must be positive");
  require_range(std::isfinite(T) && T > 0.0, "T must be positive");
  require_range(dt <= T * (1.0 + 1e-12), "dt must not exceed T");
  require_range(std::isfinite(moment_p) && moment_p >= 2.0, "moment_p must be >= 2");
  require_range(quad_order == 0 || quad_order >= 4 * n_modes,
                "quad_order must be 0 (automatic) or >= 4 * n_modes");
  require_range(energy_cap > 0.0, "energy_cap must be positive");
  require_range(brownian_refinement >= 0 && brownian_refinement <= 20,
                "brownian_refinement must be in [0, 20]");
}

int SolverConfig::steps() const { return static_cast<int>(std::llround(T / dt)); }

int SolverConfig::effective_quad_order() const {
  return quad_order > 0 ? quad_order : default_quad_order(n_modes);
}

double state_energy(const State& s, double eps) {
  return s.u.coeffs.squaredNorm() + eps * s.p.coeffs.squaredNorm();
}

std::pair<double, VelocityField> first_stokes_mode(const Spaces& spaces) {
  const Eigen::MatrixXd& k = spaces.solenoidal_basis();
  const Eigen::MatrixXd h = k.transpose() * spaces.stiffness().asDiagonal() * k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXd v = k * es.eigenvectors().col(0);
  v.normalize();
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;
  return {es.eigenvalues()[0], VelocityField(spaces.n_modes(), v)};
}

State project_initial(const InitialSpec& spec, const Spaces& spaces) {
  const int n = spaces.n_modes();
  State s{VelocityField(n), PressureField(n), 0.0};
  auto add_velocity = [&](const ModeValue& m) {
    if (m.d < 1 || m.d > 2 || m.j < 1 || m.k < 1) {
      throw ConfigError("initial velocity mode (" + std::to_string(m.j) + "," +
                        std::to_string(m.k) + "," + std::to_string(m.d) + ") is malformed");
    }
    if (m.j <= n && m.k <= n) s.u.at(m.d, m.j, m.k) += m.value;
  };
  const std::vector<ModeValue> low_modes{{1, 1, 1, 1.0}, {1, 2, 2, 0.5}, {2, 1, 1, -0.5},
                                         {2, 2, 2, 0.25}};
  if (spec.preset == "zero" || spec.preset == "modes") {
  } else if (spec.preset == "default") {
    for (const ModeValue& m : low_modes) add_velocity(m);
  } else if (spec.preset == "solenoidal") {
    for (const ModeValue& m : low_modes) add_velocity(m);
    s.u.coeffs = spaces.leray_projector() * s.u.coeffs;
  } else if (spec.preset == "stokes1") {
    s.u = first_stokes_mode(spaces).second;
  } else {
    throw ConfigError("unknown initial preset '" + spec.preset + "'");
  }
  for (const ModeValue& m : spec.velocity) add_velocity(m);
  s.u.coeffs *= spec.amplitude;
  for (const PressureModeValue& m : spec.pressure) {
    if (m.a < 0 || m.b < 0 || (m.a == 0 && m.b == 0)) {
      throw ConfigError("initial pressure mode (" + std::to_string(m.a) + "," +
                        std::to_string(m.b) + ") is malformed");
    }
    if (m.a < n && m.b < n) s.p.coeffs[pressure_slot(n, m.a, m.b)] += m.value;
  }
  return s;
}

Integrator::Integrator(std::shared_ptr<const Spaces> spaces, SolverConfig cfg,
                       DeterministicForce force, NoiseModel noise, Scheme scheme)
    : spaces_(std::move(spaces)),
      cfg_(cfg),
      force_(std::move(force)),
      noise_(std::move(noise)),
      scheme_(scheme) {
  cfg_.validate();
  if (spaces_->n_modes() != cfg_.n_modes) throw StructuralError("spaces / config cutoff mismatch");
  if (force_.f.n_modes == 0) force_.f = VelocityField(cfg_.n_modes);
  if (force_.f.n_modes != cfg_.n_modes) throw StructuralError("force / config cutoff mismatch");
  if (noise_.size() > 0 && noise_.n_modes() != cfg_.n_modes) {
    throw StructuralError("noise / config cutoff mismatch");
  }
  if (noise_.size() == 0) noise_ = NoiseModel(cfg_.n_modes, {});
  grid_ = std::make_shared<const SpectralGrid>(cfg_.n_modes, cfg_.effective_quad_order());
  factor_ = factorization(*spaces_, cfg_, scheme_);
}

WienerIncrement Integrator::increment(std::uint64_t path, std::uint64_t step) const {
  return sample_increment(noise_, cfg_.dt, cfg_.seed, path, step, cfg_.brownian_refinement);
}

State Integrator::advance(const State& s, const GridSample& sample, const WienerIncrement& inc,
                          EnergyLedgerEntry* entry) const {
  const double dt = cfg_.dt;
  const Eigen::VectorXd& u = s.u.coeffs;
  const VelocityField xi = noise_contribution(noise_, inc);

  Eigen::VectorXd rhs = u + dt * force_.f.coeffs + xi.coeffs;
  if (nonlinear_) rhs -= dt * bhat_operator(*grid_, sample).pairings;

  State next{VelocityField(cfg_.n_modes), PressureField(cfg_.n_modes), s.t + dt};
  if (scheme_ == Scheme::kProjected) {
    const Eigen::MatrixXd& k = spaces_->solenoidal_basis();
    next.u.coeffs = k * factor_->solve(k.transpose() * rhs);
    next.p = s.p;
  } else {
    const SparseRowMatrix& b = spaces_->weak_divergence();
    rhs += dt * (b.transpose() * s.p.coeffs);
    next.u.coeffs = factor_->solve(rhs);
    next.p.coeffs = s.p.coeffs - (dt / cfg_.eps) * (b * next.u.coeffs);
  }

  if (entry != nullptr) {
    EnergyLedgerEntry& e = *entry;
    e.t = next.t;
    e.energy_before = state_energy(s, cfg_.eps);
    e.energy = state_energy(next, cfg_.eps);
    e.dissipation_increment = 2.0 * cfg_.nu * h10_norm_sq(s.u) * dt;
    e.work_increment = 2.0 * force_.f.coeffs.dot(u) * dt;
    e.ito_increment = noise_.trace() * dt;
    e.martingale_increment = 2.0 * xi.coeffs.dot(u);
    e.residual = e.recomputed_residual();
  }
  return next;
}

State Integrator::step(const State& s, const WienerIncrement& inc, EnergyLedgerEntry* entry) const {
  return advance(s, grid_->sample(s.u, nonlinear_), inc, entry);
}

PathRecord Integrator::run_path(const State& initial, std::uint64_t path,
                                const StepObserver& observer) const {
  const int steps = cfg_.steps();
  PathRecord rec;
  rec.seed = cfg_.seed;
  rec.path = path;
  for (auto* v : {&rec.t, &rec.l2_u, &rec.h1_u, &rec.l4_u, &rec.l2_p, &rec.l2_div_u, &rec.energy,
                  &rec.residual}) {
    v->reserve(steps + 1);
  }
  rec.ledger.reserve(steps);

  const SparseRowMatrix& b = spaces_->weak_divergence();
  auto record = [&](int m, const State& s, const GridSample& sample, double residual) {
    const double e = state_energy(s, cfg_.eps);
    if (!std::isfinite(e) || e > cfg_.energy_cap) throw DivergedPath(cfg_.seed, path, m, e);
    rec.t.push_back(m * cfg_.dt);
    rec.l2_u.push_back(l2_norm(s.u));
    rec.h1_u.push_back(h10_norm(s.u));
    rec.l4_u.push_back(l4_norm(*grid_, sample));
    rec.l2_p.push_back(l2_norm(s.p));
    rec.l2_div_u.push_back((b * s.u.coeffs).norm());
    rec.energy.push_back(e);
    rec.residual.push_back(residual);
  };

  State s = initial;
  s.t = 0.0;
  GridSample sample = grid_->sample(s.u, nonlinear_);
  record(0, s, sample, 0.0);
  if (observer) observer(0, s);
  for (int m = 0; m < steps; ++m) {
    EnergyLedgerEntry entry;
    s = advance(s, sample, increment(path, static_cast<std::uint64_t>(m)), &entry);
    s.t = (m + 1) * cfg_.dt;
    entry.t = s.t;
    sample = grid_->sample(s.u, nonlinear_);
    rec.ledger.push_back(entry);
    record(m + 1, s, sample, entry.residual);
    if (observer) observer(m + 1, s);
  }
  return rec;
}

double max_abs_residual(const std::vector<EnergyLedgerEntry>& ledger) {
  double m = 0.0;
  for (const EnergyLedgerEntry& e : ledger) m = std::max(m, std::abs(e.residual));
  return m;
}

double rms_residual(const std::vector<EnergyLedgerEntry>& ledger) {
  if (ledger.empty()) return 0.0;
  double acc = 0.0;
  for (const EnergyLedgerEntry& e : ledger) acc += e.residual * e.residual;
  return std::sqrt(acc / static_cast<double>(ledger.size()));
}

ResidualSummary residual_order(const std::vector<double>& dts,
                               const std::vector<double>& magnitudes) {
  if (dts.size() != magnitudes.size()) throw StructuralError("one magnitude per dt expected");
  ResidualSummary out;
  const std::size_t n = dts.size();
  if (n < 2) return out;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(magnitudes[i] > 0.0) || !std::isfinite(magnitudes[i])) return out;
    mx += std::log(dts[i]);
    my += std::log(magnitudes[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(dts[i]) - mx;
    sxy += x * (std::log(magnitudes[i]) - my);
    sxx += x * x;
  }
  if (sxx > 0.0) {
    out.slope = sxy / sxx;
    out.slope_defined = true;
  }
  return out;
}

ResidualSummary energy_residual(const std::vector<std::vector<EnergyLedgerEntry>>& runs,
                                const std::vector<double>& dts) {
  if (runs.size() != dts.size()) throw StructuralError("one dt per ledger run expected");
  std::vector<double> mags;
  for (const auto& r : runs) mags.push_back(rms_residual(r));
  ResidualSummary out = residual_order(dts, mags);
  if (!runs.empty()) {
    out.max_abs = max_abs_residual(runs.front());
    out.rms = mags.front();
  }
  return out;
}

std::size_t factorization_cache_size() {
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cache().size();
}

}  // namespace sacns

#include "sacns/verification.hpp"

#include "sacns/errors.hpp"
#include "sacns/operators.hpp"
#include "sacns/random_fields.hpp"
#include "sacns/rng.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace sacns {
namespace {

enum Role : std::uint64_t { kU = 0, kV = 1, kW = 2, kUScale = 3, kVScale = 4, kWScale = 5, kRadius = 6 };

double log_amplitude(std::uint64_t seed, std::uint64_t role) {
  // 10^[-2, 2]
  return std::pow(10.0, 4.0 * random_scale(seed, 0, role) - 2.0);
}

LedgerRow inequality(const char* name, std::uint64_t seed, int n, double nu,
                     const InequalityCheck& c) {
  return {name, seed, n, nu, c.lhs, c.rhs, c.rhs - c.lhs, c.lhs <= c.rhs};
}

LedgerRow identity(const char* name, std::uint64_t seed, int n, double nu, double residual,
                   double tol, double scale) {
  const double lhs = std::abs(residual);
  const double rhs = tol * scale;
  return {name, seed, n, nu, lhs, rhs, rhs - lhs, lhs <= rhs};
}

struct Grids {
  SpectralGrid quad;
  SpectralGrid l1;
};

const Grids& grids_for(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Grids>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<Grids>(Grids{SpectralGrid(n, default_quad_order(n)),
                                         SpectralGrid(n, composite_gauss_legendre(8, 8 * n))});
  }
  return *slot;
}

}  // namespace

std::vector<LedgerRow> verify_sample(std::uint64_t seed, int n, double nu, double exponent) {
  const Grids& g = grids_for(n);
  const SpectralGrid& grid = g.quad;

  const VelocityField u = log_amplitude(seed, kUScale) * random_field(n, seed, 0, kU, exponent);
  VelocityField v = log_amplitude(seed, kVScale) * random_field(n, seed, 0, kV, exponent);
  const VelocityField w = log_amplitude(seed, kWScale) * random_field(n, seed, 0, kW, exponent);

  const double hu = h10_norm(u);
  const double hv = h10_norm(v);
  const double hw = h10_norm(w);

  std::vector<LedgerRow> rows;
  const auto lady = check_ladyzhenskaya(grid, u);
  rows.push_back(inequality("ladyzhenskaya_u1", seed, n, nu, lady[0]));
  rows.push_back(inequality("ladyzhenskaya_u2", seed, n, nu, lady[1]));
  const auto prod = check_product_bound(grid, g.l1, u);
  rows.push_back(inequality("product_bound_u1u2", seed, n, nu, prod[0]));
  rows.push_back(inequality("product_bound_u2u1", seed, n, nu, prod[1]));
  rows.push_back(inequality("convection_bound", seed, n, nu, check_convection_bound(grid, u, w)));
  rows.push_back(inequality("difference_bound", seed, n, nu, check_difference_bound(grid, u, v, nu)));

  const DualVector bu = bhat_operator(grid, u);
  rows.push_back(identity("null_self_pairing", seed, n, nu, bu.apply(u), kNullPairingTol, hu * hu * hu));
  rows.push_back(identity("null_pairing", seed, n, nu, trilinear_bhat(grid, u, v, v), kNullPairingTol,
                          hu * hv * hv));
  rows.push_back(identity("antisymmetry", seed, n, nu,
                          trilinear_bhat(grid, u, v, w) + trilinear_bhat(grid, u, w, v),
                          kAntisymmetryTol, hu * hv * hw));
  rows.push_back(identity("ibp_identity", seed, n, nu, check_ibp_identity(grid, u, v, w), kIbpTol,
                          hu * hv * hw));

  const VelocityField d = u - v;
  const double lhs_diff = bu.apply(d) - bhat_operator(grid, v).apply(d);
  const double rhs_diff = -bhat_operator(grid, d).apply(v);
  rows.push_back(identity("difference_identity", seed, n, nu, lhs_diff - rhs_diff,
                          kDifferenceIdentityTol, hu * hv * h10_norm(d)));

  // Radius in [0.1, 10]; v rescaled to sit inside the ball.
  const double r = std::pow(10.0, 2.0 * random_scale(seed, 0, kRadius) - 1.0);
  const double l4v = l4_norm(grid, v);
  if (l4v > 0.0) v = (r * random_scale(seed, 1, kRadius) / l4v) * v;
  const MonotonicityReport m = monotonicity_margin(grid, u, v, nu, r);
  const double scale = std::max(hu * h10_norm(v), h10_norm_sq(u - v));
  LedgerRow mono{"local_monotonicity", seed, n, nu, m.rhs,
                 m.stokes_term + m.convection_term + m.ball_term + kMonotonicityTol * scale, 0.0,
                 false};
  mono.margin = mono.rhs - mono.lhs;
  mono.pass = m.in_ball && mono.margin >= 0.0;
  rows.push_back(mono);
  return rows;
}

VerifyReport run_inequality_suite(const VerifyPlan& plan) {
  if (plan.samples < 0) throw ConfigError("samples must be non-negative");
  if (plan.n_modes.empty() || plan.nus.empty()) throw ConfigError("verify needs N and nu lists");
  VerifyReport rep;
  const std::size_t nn = plan.n_modes.size();
  for (int s = 0; s < plan.samples; ++s) {
    const int n = plan.n_modes[s % nn];
    const double nu = plan.nus[(s / nn) % plan.nus.size()];
    const std::uint64_t seed = derive_seed(plan.seed, static_cast<std::uint64_t>(s));
    for (LedgerRow& row : verify_sample(seed, n, nu, plan.spectral_exponent)) {
      if (!row.pass) ++rep.violations;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

}  // namespace sacns

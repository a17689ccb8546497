#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sacns {

struct VerifyPlan {
  std::uint64_t seed = 42;
  int samples = 1000;
  std::vector<int> n_modes{2, 4, 6};
  std::vector<double> nus{0.05, 0.1, 1.0};
  double spectral_exponent = 2.0;
};

/// One inequality or identity evaluated on one random sample.
/// For identities lhs = |residual| and rhs = tolerance * scale.
struct LedgerRow {
  std::string check;
  std::uint64_t seed = 0;
  int n_modes = 0;
  double nu = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<LedgerRow> rows;
  int violations = 0;
  bool pass() const { return violations == 0; }
};

/// Tolerances relative to the product of the H1 norms of the arguments.
inline constexpr double kNullPairingTol = 1e-12;
inline constexpr double kAntisymmetryTol = 1e-12;
inline constexpr double kDifferenceIdentityTol = 1e-10;
inline constexpr double kIbpTol = 1e-8;
inline constexpr double kMonotonicityTol = 1e-10;

/// Sample s uses N = n_modes[s mod |n_modes|], nu = nus[(s / |n_modes|) mod |nus|]
/// and fields drawn from derive_seed(plan.seed, s), so every row can be
/// regenerated from its recorded seed.
VerifyReport run_inequality_suite(const VerifyPlan& plan);

/// All rows for a single sample seed.
std::vector<LedgerRow> verify_sample(std::uint64_t sample_seed, int n_modes, double nu,
                                     double spectral_exponent);

}  // namespace sacns

#pragma once

#include <array>
#include <cstdint>

namespace sacns {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// A draw is a pure function of (key, counter); there is no hidden state,
/// so any number of paths can be generated in any order with identical results.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Independent sub-streams drawn from one master seed.
enum class Stream : std::uint32_t {
  kWiener = 1,
  kRandomField = 2,
  kRandomScale = 3,
};

/// Address of a single standard-normal variate.
struct DrawAddress {
  std::uint64_t seed = 0;
  Stream stream = Stream::kWiener;
  std::uint64_t path = 0;
  std::uint64_t step = 0;
  std::uint64_t index = 0;
};

/// Standard normal deviate at `addr` (Box-Muller on one Philox block;
/// indices 2m and 2m+1 share a block).
double standard_normal(const DrawAddress& addr);

/// Uniform deviate in (0,1) at `addr`.
double uniform_open(const DrawAddress& addr);

/// Mixes (seed, sample) into a 64-bit seed for per-sample provenance.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t sample);

}  // namespace sacns

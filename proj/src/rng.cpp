#include "sacns/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sacns {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// 53-bit double in (0,1] from two 32-bit words.
inline double to_unit_open_closed(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

PhiloxCounter block_for(const DrawAddress& addr, std::uint64_t block) {
  if (addr.step > 0xFFFFFFFFull || addr.path > 0xFFFFFFFFull || block > 0xFFFFFFFFull) {
    throw std::out_of_range("draw address exceeds the 32-bit counter fields");
  }
  const PhiloxCounter ctr{static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(addr.step),
                          static_cast<std::uint32_t>(addr.path),
                          static_cast<std::uint32_t>(addr.stream)};
  const PhiloxKey key{static_cast<std::uint32_t>(addr.seed),
                      static_cast<std::uint32_t>(addr.seed >> 32)};
  return philox4x32_10(ctr, key);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

double standard_normal(const DrawAddress& addr) {
  const PhiloxCounter r = block_for(addr, addr.index / 2);
  const double u1 = to_unit_open_closed(r[0], r[1]);
  const double u2 = to_unit_open_closed(r[2], r[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (addr.index % 2 == 0) ? radius * std::cos(angle) : radius * std::sin(angle);
}

double uniform_open(const DrawAddress& addr) {
  const PhiloxCounter r = block_for(addr, addr.index);
  // (0,1]: reflect to (0,1) by excluding exactly 1.
  const double u = to_unit_open_closed(r[0], r[1]);
  return u < 1.0 ? u : 0.5 * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t sample) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (sample + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace sacns

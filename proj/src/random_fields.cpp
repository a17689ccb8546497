#include "sacns/random_fields.hpp"

#include "sacns/rng.hpp"

#include <cmath>

namespace sacns {

VelocityField random_field(int n_modes, std::uint64_t seed, std::uint64_t sample,
                           std::uint64_t role, double exponent) {
  VelocityField u(n_modes);
  for (int s = 0; s < u.coeffs.size(); ++s) {
    const VelocityIndex v = velocity_index(n_modes, s);
    const double sd = std::pow(static_cast<double>(v.j * v.j + v.k * v.k), -0.5 * exponent);
    u.coeffs[s] = sd * standard_normal({seed, Stream::kRandomField, sample, role,
                                        static_cast<std::uint64_t>(s)});
  }
  return u;
}

double random_scale(std::uint64_t seed, std::uint64_t sample, std::uint64_t role) {
  return uniform_open({seed, Stream::kRandomScale, sample, role, 0});
}

}  // namespace sacns

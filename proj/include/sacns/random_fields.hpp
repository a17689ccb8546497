#pragma once

#include "sacns/fields.hpp"

#include <cstdint>

namespace sacns {

/// Random velocity field: coefficient i ~ Normal(0, (j^2 + k^2)^-s), drawn
/// from the random-field stream at (seed, sample, role).
VelocityField random_field(int n_modes, std::uint64_t seed, std::uint64_t sample,
                           std::uint64_t role, double exponent = 2.0);

/// Uniform (0,1) draw from the scale stream, for random amplitudes and radii.
double random_scale(std::uint64_t seed, std::uint64_t sample, std::uint64_t role);

}  // namespace sacns

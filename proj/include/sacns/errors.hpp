#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sacns {

/// Invalid user configuration: bad mode cutoff, non-positive step, unknown key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible shape (mode cutoffs or noise dimensions differ).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A linear factorization that should be SPD was not.
class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A path whose energy exceeded the configured cap or became non-finite.
class DivergedPath : public std::runtime_error {
 public:
  DivergedPath(std::uint64_t seed, std::uint64_t path, std::int64_t step, double energy)
      : std::runtime_error("path " + std::to_string(path) + " (seed " + std::to_string(seed) +
                           ") diverged at step " + std::to_string(step) +
                           ", energy = " + std::to_string(energy)),
        seed_(seed),
        path_(path),
        step_(step),
        energy_(energy) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t path() const { return path_; }
  std::int64_t step() const { return step_; }
  double energy() const { return energy_; }

 private:
  std::uint64_t seed_;
  std::uint64_t path_;
  std::int64_t step_;
  double energy_;
};

}  // namespace sacns

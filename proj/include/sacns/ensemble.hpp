#pragma once

#include "sacns/integrator.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sacns {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work is
/// claimed from a shared counter, so results must be stored by index.
/// The exception of the lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// One Monte Carlo path, or the divergence that stopped it.
struct PathOutcome {
  std::optional<PathRecord> record;
  std::string failure;
  std::int64_t failed_step = -1;
};

/// Paths 0..count-1 of `integrator` from a shared initial state. Diverged
/// paths are captured rather than thrown.
std::vector<PathOutcome> run_ensemble(const Integrator& integrator, const State& initial,
                                      std::size_t count, int threads);

}  // namespace sacns

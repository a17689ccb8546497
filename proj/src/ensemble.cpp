#include "sacns/ensemble.hpp"

#include "sacns/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace sacns {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  std::size_t first_index = count;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < first_index) {
          first_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<PathOutcome> run_ensemble(const Integrator& integrator, const State& initial,
                                      std::size_t count, int threads) {
  std::vector<PathOutcome> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    try {
      out[i].record = integrator.run_path(initial, i);
    } catch (const DivergedPath& e) {
      out[i].failure = e.what();
      out[i].failed_step = e.step();
    }
  });
  return out;
}

}  // namespace sacns

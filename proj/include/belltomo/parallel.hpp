#ifndef BELLTOMO_PARALLEL_HPP
#define BELLTOMO_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace belltomo {

/// Worker count: hardware concurrency, capped by BELLTOMO_THREADS when set.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BELLTOMO_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // unparsable value: ignore the cap
    }
  }
  return hw;
}

/// Runs body(i) for i in [0, count) over contiguous chunks. Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
/// The first exception (in chunk order) is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace belltomo

#endif  // BELLTOMO_PARALLEL_HPP

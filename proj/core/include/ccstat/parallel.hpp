#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace ccstat {

namespace detail {
inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

// Runs body(i) for i in [0, count) on a small thread pool.  Each index is
// executed exactly once; callers make the result deterministic by writing
// only to slot i (and seeding any randomness from i).  Nested calls from a
// worker thread run serially.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body,
                         unsigned threads = 0) {
  if (count == 0) return;
  unsigned hw = threads ? threads : std::thread::hardware_concurrency();
  if (hw <= 1 || count == 1 || detail::inside_parallel_region()) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  hw = static_cast<unsigned>(std::min<std::size_t>(hw, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    detail::inside_parallel_region() = true;
    const std::size_t block = std::max<std::size_t>(1, count / (8 * hw));
    for (;;) {
      const std::size_t begin = next.fetch_add(block);
      if (begin >= count || failed.load()) return;
      const std::size_t end = std::min(count, begin + block);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(hw);
  for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace ccstat

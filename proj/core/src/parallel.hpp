#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mil::detail {

// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries depend
// only on n and workers; results written by index are therefore deterministic.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(n, std::size_t{workers} * 4);
  std::vector<std::thread> pool;
  std::mutex mutex;
  std::exception_ptr error;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t c;
      {
        std::lock_guard lock(mutex);
        if (next == chunks || error) return;
        c = next++;
      }
      try {
        fn(n * c / chunks, n * (c + 1) / chunks);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  for (unsigned w = 0; w < std::min<std::size_t>(workers, chunks); ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mil::detail

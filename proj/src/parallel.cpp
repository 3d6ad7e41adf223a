#include "rankedge/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rankedge {

unsigned default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_chunks(std::uint64_t chunks, unsigned threads,
                     const std::function<void(std::uint64_t)>& body) {
  if (threads == 0) threads = default_threads();
  if (chunks == 0) return;
  auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t c = w; c < chunks; c += workers) body(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rankedge

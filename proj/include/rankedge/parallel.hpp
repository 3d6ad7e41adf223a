#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace rankedge {

// Number of workers used when a caller passes threads = 0.
unsigned default_threads();

// Runs body(c) for every chunk c in [0, chunks). Chunks are handed out
// round-robin, so the work done for a chunk never depends on the thread
// count; callers reduce per-chunk results in chunk order.
void parallel_chunks(std::uint64_t chunks, unsigned threads,
                     const std::function<void(std::uint64_t)>& body);

}  // namespace rankedge

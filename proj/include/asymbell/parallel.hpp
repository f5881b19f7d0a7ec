#pragma once

#include <cstdint>
#include <functional>

namespace asymbell {

// Worker-count policy: min(hint or hardware, ASYMBELL_THREADS). hint <= 0
// means "no preference".
int max_workers(int hint = 0);

inline std::size_t chunk_count(std::int64_t total, std::int64_t chunk_size) {
    return total <= 0 ? 0 : static_cast<std::size_t>((total + chunk_size - 1) / chunk_size);
}

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. The chunk grid depends only on (total, chunk_size), never on the
// worker count, so per-chunk results reduced in chunk order are identical for
// any parallelism. fn must write only to its own chunk slot.
void for_chunks(std::int64_t total, std::int64_t chunk_size,
                const std::function<void(std::size_t, std::int64_t, std::int64_t)>& fn,
                int worker_hint = 0);

}  // namespace asymbell

#include "asymbell/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace asymbell {

int max_workers(int hint) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int workers = hint > 0 ? std::min(hint, hw) : hw;
    if (const char* cap = std::getenv("ASYMBELL_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) workers = std::min(workers, c);
    }
    return std::max(workers, 1);
}

void for_chunks(std::int64_t total, std::int64_t chunk_size,
                const std::function<void(std::size_t, std::int64_t, std::int64_t)>& fn,
                int worker_hint) {
    const std::size_t chunks = chunk_count(total, chunk_size);
    if (chunks == 0) return;
    const int workers = std::min<int>(max_workers(worker_hint), static_cast<int>(chunks));

    auto run_chunk = [&](std::size_t c) {
        const std::int64_t begin = static_cast<std::int64_t>(c) * chunk_size;
        const std::int64_t end = std::min(begin + chunk_size, total);
        fn(c, begin, end);
    };

    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= chunks) return;
                try {
                    run_chunk(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace asymbell

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace glsbi {

/**
 * Runs task(i) for i in [0, count) on `workers` threads. Tasks must be
 * independent and write only to their own slot; results are therefore the
 * same for any worker count. If tasks throw, the exception of the lowest
 * failing index is rethrown after all workers finish.
 */
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
    workers = std::max(1u, workers);
    std::vector<std::exception_ptr> errors(count);
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    task(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::jthread> pool;
        const auto spawn = std::min<std::size_t>(workers, count);
        pool.reserve(spawn);
        for (std::size_t w = 0; w < spawn; ++w)
            pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

inline unsigned default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1u : hc;
}

} // namespace glsbi

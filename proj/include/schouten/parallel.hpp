#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace schouten {

/// Worker cap: SCHOUTEN_THREADS if set to a positive integer, else the hardware count.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("SCHOUTEN_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(k) for k in [0, count) on contiguous blocks. Callers write results into
/// per-index slots, so the outcome does not depend on scheduling. The first exception
/// thrown by any worker is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_block = 64)
{
    const std::size_t workers = std::min<std::size_t>(worker_count(), (count + min_block - 1) / std::max<std::size_t>(min_block, 1));
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k)
            body(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const std::size_t block = (count + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t begin = t * block, end = std::min(count, begin + block);
        if (begin >= end)
            break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t k = begin; k < end; ++k)
                    body(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace schouten

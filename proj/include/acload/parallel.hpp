#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace acload
{

inline unsigned resolve_threads(unsigned requested)
{
    if (requested != 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls `body(begin, end)` over contiguous slices of [0, n) on up to
/// `threads` workers. Each index belongs to exactly one slice, so bodies that
/// write only to their own slots give schedule-independent results.
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body)
{
    const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), n);
    if (workers <= 1) {
        if (n > 0)
            body(std::size_t{0}, n);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            }
            catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace acload

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace kpdtm {

/// Worker cap: hardware concurrency, clamped by the PDTM_THREADS environment
/// variable when set. Always at least 1. Parallel sections write to disjoint
/// preallocated slots, so results do not depend on this value.
inline std::size_t thread_budget() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("PDTM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && static_cast<std::size_t>(v) < n)
            n = static_cast<std::size_t>(v);
    }
    return n;
}

/// Runs fn(begin, end) over a partition of [0, count) on up to thread_budget()
/// threads. fn must only write to slots it owns.
template <class Fn>
void parallel_chunks(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        if (count > 0) fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, count);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace kpdtm

#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace cbws {

// Worker count: CBWS_WORKERS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
inline size_t worker_count() {
    if (const char* env = std::getenv("CBWS_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<size_t>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Deterministic index-space map: out[i] = f(i) for i in [0, count). The index
// range is split into contiguous chunks, one per worker; because every f(i)
// depends only on i (callers seed any randomness from the index), the result
// vector is byte-for-byte independent of the worker count. If any f(i)
// throws, the exception from the smallest such index is rethrown after all
// workers finish, again independent of scheduling.
template <typename T, typename F>
std::vector<T> parallel_map(size_t count, F&& f) {
    std::vector<T> out(count);
    if (count == 0) return out;
    size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::pair<size_t, std::exception_ptr>> errors(
        workers, {count, nullptr});
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const size_t chunk = (count + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t lo = w * chunk;
        const size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([&, w, lo, hi]() {
            for (size_t i = lo; i < hi; ++i) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    errors[w] = {i, std::current_exception()};
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    size_t first = count;
    std::exception_ptr eptr = nullptr;
    for (const auto& [idx, ep] : errors) {
        if (ep && idx < first) {
            first = idx;
            eptr = ep;
        }
    }
    if (eptr) std::rethrow_exception(eptr);
    return out;
}

} // namespace cbws

#pragma once

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sumset {

// Resolves the worker count: the SUMSET_THREADS environment variable wins,
// then an explicit request, then hardware concurrency.
inline int thread_count(int requested = 0) {
    if (const char* env = std::getenv("SUMSET_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    if (requested >= 1) return requested > 256 ? 256 : requested;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return hw > 256 ? 256 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) across `threads` workers in fixed contiguous
// blocks. fn must only touch state owned by index i, so results are
// independent of the worker count; callers then combine them in index order.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
    if (n <= 0) return;
    if (threads > n) threads = static_cast<int>(n);
    if (threads <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        std::int64_t begin = n * t / threads;
        std::int64_t end = n * (t + 1) / threads;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::int64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Maps fn over [0, n) and returns the results in index order regardless of
// the worker count.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::int64_t n, int threads, Fn&& fn) {
    std::vector<T> out(static_cast<std::size_t>(n > 0 ? n : 0));
    parallel_for(n, threads, [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = fn(i); });
    return out;
}

} // namespace sumset

#pragma once

// Static-partition parallel map. Each worker owns a contiguous index range
// and writes only its own slots, so results are identical for any thread
// count. Reductions that need an ordering accumulate inside one range.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace scnet {

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// fn(begin, end) is invoked on disjoint [begin, end) chunks covering [0, n).
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int t = effective_threads(threads);
    if (t <= 1 || n < 2048) {
        fn(std::size_t{0}, n);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(t), n);
    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (std::size_t w = 0; w < nthreads; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace scnet

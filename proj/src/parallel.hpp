#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace vlcsec::detail {

// Runs body(i) for i in [0, n) over contiguous chunks. Each index writes
// only its own output slot, so results are identical to the serial order.
// The first exception thrown by any chunk is rethrown.
template <typename Body>
void parallel_for(int n, int threads, Body&& body) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    const int chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        const int lo = t * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, t] {
            try {
                for (int i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace vlcsec::detail

#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace finsim {

// Runs fn(0..n-1) on up to `workers` threads. Tasks write only their own
// result slot, so the outcome is identical for any worker count.
inline void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (workers < 1) workers = 1;
    if (workers > n) workers = n;
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace finsim

#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace symm {

/// Worker count: hardware concurrency, capped by SYMM_PG_THREADS when set.
inline int worker_count() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("SYMM_PG_THREADS")) {
        try {
            const int parsed = std::stoi(cap);
            if (parsed > 0) {
                n = std::min(n, parsed);
            }
        } catch (const std::exception&) {
            // malformed value: ignore the cap
        }
    }
    return n;
}

/// Static block partition of [begin, end) over worker_count() threads.
/// `fn(i)` must only touch state owned by index i.
template <class Fn>
void parallel_for(int begin, int end, Fn&& fn) {
    const int total = end - begin;
    if (total <= 0) {
        return;
    }
    const int workers = std::min(worker_count(), total);
    if (workers == 1) {
        for (int i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + static_cast<int>(static_cast<long long>(total) * w / workers);
        const int hi = begin + static_cast<int>(static_cast<long long>(total) * (w + 1) / workers);
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
}

}  // namespace symm

// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mrf {

namespace {

std::atomic<int> g_num_threads{0}; // 0 = use hardware default

int hardware_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

int num_threads() {
    const int n = g_num_threads.load(std::memory_order_relaxed);
    return n > 0 ? n : hardware_threads();
}

void set_num_threads(int n) {
    g_num_threads.store(std::max(1, n), std::memory_order_relaxed);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0)
        return;
    const int nt = static_cast<int>(std::min<std::int64_t>(num_threads(), n));
    if (nt <= 1) {
        for (std::int64_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    // Static contiguous split. Thread count only changes who runs an item,
    // never what the item computes.
    const std::int64_t chunk = (n + nt - 1) / nt;
    std::exception_ptr first_error;
    std::mutex error_mutex;

    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        const std::int64_t begin = static_cast<std::int64_t>(t) * chunk;
        const std::int64_t end = std::min<std::int64_t>(n, begin + chunk);
        if (begin >= end)
            break;
        workers.emplace_back([&, begin, end] {
            try {
                for (std::int64_t i = begin; i < end; ++i)
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& w : workers)
        w.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace mrf

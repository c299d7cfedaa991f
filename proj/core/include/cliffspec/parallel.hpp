#pragma once

// Deterministic parallel helpers.  Work items write into preallocated,
// disjoint slots and sums are taken over a fixed pairwise tree, so results
// are byte-identical no matter how many worker threads run.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "cliffspec/errors.hpp"

namespace cliffspec {

/// Worker-thread cap: the CLIFFSPEC_THREADS environment variable when set
/// to a positive integer, otherwise the hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("CLIFFSPEC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<int>(v > 256 ? 256 : v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run body(i) for every i in [0, count).  Bodies must touch disjoint data.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t budget = static_cast<std::size_t>(thread_budget());
    const std::size_t workers = budget < count ? budget : count;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                body(i);
            }
        });
    }
    for (std::thread& th : pool) th.join();
}

/// Sum of the terms over a balanced pairwise tree.  The result depends only
/// on the order of the terms, never on thread scheduling.
template <typename T>
T pairwise_reduce(std::vector<T> terms) {
    if (terms.empty()) throw domain_error("pairwise_reduce: no terms");
    while (terms.size() > 1) {
        std::vector<T> half;
        half.reserve((terms.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
            half.push_back(terms[i] + terms[i + 1]);
        }
        if (terms.size() % 2 == 1) half.push_back(terms.back());
        terms = std::move(half);
    }
    return terms[0];
}

} // namespace cliffspec

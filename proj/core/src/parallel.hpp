#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bohmrotor::detail {

/// Calls body(i) for i in [0, count) on a fixed set of worker threads.
/// Each index is visited exactly once; bodies must not share mutable state.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    constexpr std::size_t kMinPerWorker = 512;
    const std::size_t hardware = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hardware, std::max<std::size_t>(1, count / kMinPerWorker));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                body(i);
            }
        });
    }
}

} // namespace bohmrotor::detail

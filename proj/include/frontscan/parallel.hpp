// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace frontscan {

// Worker count used by every parallel kernel. 0 selects the OpenMP default.
void set_worker_count(int workers) noexcept;
[[nodiscard]] int worker_count() noexcept;

// Runs body(i) for i in [0, n) across the worker pool. The first exception thrown by any
// iteration is rethrown on the calling thread after the loop finishes.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock{failure_mutex};
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace frontscan

// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/parallel.hpp>

#include <atomic>

#include <omp.h>

namespace frontscan {

namespace {
    std::atomic<int> g_workers{0};
}

void set_worker_count(int workers) noexcept { g_workers.store(workers < 0 ? 0 : workers); }

int worker_count() noexcept {
    const int w = g_workers.load();
    return w > 0 ? w : omp_get_max_threads();
}

}  // namespace frontscan

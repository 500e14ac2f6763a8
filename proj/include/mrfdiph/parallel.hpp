// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

namespace mrf {

/// Number of worker threads used by parallel_for (process-wide).
int num_threads();

/// Sets the worker thread count; values < 1 are clamped to 1.
void set_num_threads(int n);

/// Runs fn(i) for every i in [0, n). Work items must be mutually independent
/// and must not care which thread executes them: the same inputs then yield
/// bit-identical results for any thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

} // namespace mrf

// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mrf {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// FFTW's planner is not thread-safe; executing a cached plan on fresh
// buffers is. FFTW_ESTIMATE keeps plan selection deterministic and
// FFTW_UNALIGNED lets one plan serve arbitrarily aligned buffers.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

PlanPair plans_for(int h, int w) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    const auto key = std::make_pair(h, w);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    const std::size_t n = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
    std::vector<cplx> a(n), b(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(h, w, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_2d(h, w, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD, flags);
    if (p.fwd == nullptr || p.bwd == nullptr)
        throw std::runtime_error("fftw plan creation failed");
    cache[key] = p;
    return p;
}

void run(fftw_plan plan, const cplx* in, cplx* out, int h, int w) {
    if (h < 1 || w < 1)
        throw std::domain_error("fft2: dimensions must be positive");
    if (in == out)
        throw std::invalid_argument("fft2: in-place transform not supported");
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const std::size_t n = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        out[i] *= scale;
}

} // namespace

void fft2(const cplx* in, cplx* out, int h, int w) { run(plans_for(h, w).fwd, in, out, h, w); }

void ifft2(const cplx* in, cplx* out, int h, int w) { run(plans_for(h, w).bwd, in, out, h, w); }

} // namespace mrf

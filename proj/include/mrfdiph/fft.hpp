// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/common.hpp"

namespace mrf {

// Unitary 2-D DFTs (scaled by 1/sqrt(h*w) in both directions) on row-major
// h x w buffers, DC at index 0. Out-of-place only; in and out may not alias.
// Thread-safe: plans are cached per shape and shared across callers.

void fft2(const cplx* in, cplx* out, int h, int w);
void ifft2(const cplx* in, cplx* out, int h, int w);

} // namespace mrf

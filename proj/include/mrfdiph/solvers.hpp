// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/acquisition.hpp"
#include "mrfdiph/tsmi.hpp"

#include <functional>
#include <vector>

namespace mrf {

struct ProxParams {
    double weight = 1.0;            ///< quadratic coupling, must be finite and > 0
    int max_cg_iters = 5;
    double cg_tol = 1e-6;           ///< relative residual stopping threshold
    const Tsmi* warm_start = nullptr; ///< optional initial iterate (not owned)
};

struct CgResult {
    Tsmi x;
    int iterations = 0;
    double rel_residual = 0.0;
    std::vector<double> residual_trace; ///< best-so-far relative residual per iteration
};

/// Conjugate gradients for a self-adjoint PSD operator. Starts from
/// params.warm_start when given (zero otherwise), stops at max_cg_iters or
/// when the relative residual drops below cg_tol, and returns the iterate
/// with the smallest residual seen.
CgResult cg_solve(const std::function<Tsmi(const Tsmi&)>& apply_op, const Tsmi& rhs,
                  const ProxParams& params);

/// Proximal map of the k-space fidelity f(x) = ||y - Ax||^2 coupled by
/// (weight/2)||x - w||^2: approximately solves
///   (2 A^H A + weight I) x = 2 A^H y + weight w
/// by CG. The returned point never has a larger coupled objective than w.
Tsmi prox_f(const AcquisitionModel& model, const KSpace& y, const Tsmi& w,
            const ProxParams& params);

} // namespace mrf

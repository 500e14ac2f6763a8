// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace mrf {

CgResult cg_solve(const std::function<Tsmi(const Tsmi&)>& apply_op, const Tsmi& rhs,
                  const ProxParams& params) {
    if (params.max_cg_iters < 1)
        throw std::domain_error("cg_solve: iteration cap must be >= 1");
    if (!(params.cg_tol > 0.0))
        throw std::domain_error("cg_solve: tolerance must be positive");
    if (!all_finite(rhs))
        throw numeric_error("cg_solve: non-finite right-hand side");

    const double rhs_norm = norm(rhs);
    CgResult res;
    if (rhs_norm == 0.0) {
        res.x = Tsmi::zeros(rhs.h, rhs.w, rhs.channels());
        res.residual_trace.push_back(0.0);
        return res;
    }

    Tsmi x;
    Tsmi r;
    if (params.warm_start != nullptr) {
        if (!same_shape(*params.warm_start, rhs))
            throw std::domain_error("cg_solve: warm start shape mismatch");
        x = *params.warm_start;
        r = rhs;
        r.data -= apply_op(x).data;
    } else {
        x = Tsmi::zeros(rhs.h, rhs.w, rhs.channels());
        r = rhs;
    }

    Tsmi best_x = x;
    double best_res = norm(r);
    res.residual_trace.push_back(best_res / rhs_norm);

    Tsmi p = r;
    double rs_old = best_res * best_res;
    int it = 0;
    while (it < params.max_cg_iters && std::sqrt(rs_old) / rhs_norm > params.cg_tol) {
        const Tsmi ap = apply_op(p);
        const double p_ap = std::real(dot(p, ap));
        if (!std::isfinite(p_ap))
            throw numeric_error("cg_solve: non-finite curvature");
        if (p_ap <= 0.0)
            break; // descent direction exhausted for a PSD operator
        const double alpha = rs_old / p_ap;
        x.data += alpha * p.data;
        r.data -= alpha * ap.data;
        const double rs_new = std::real(dot(r, r));
        if (!std::isfinite(rs_new) || !all_finite(x))
            throw numeric_error("cg_solve: non-finite iterate");
        if (std::sqrt(rs_new) < best_res) {
            best_res = std::sqrt(rs_new);
            best_x = x;
        }
        p.data = r.data + (rs_new / rs_old) * p.data;
        rs_old = rs_new;
        ++it;
        res.residual_trace.push_back(best_res / rhs_norm);
    }

    res.x = std::move(best_x);
    res.iterations = it;
    res.rel_residual = best_res / rhs_norm;
    return res;
}

namespace {

// 0.5 Re<x, Mx> - Re<b, x>: the CG quadratic, equal to the coupled prox
// objective up to a constant.
double quadratic_value(const std::function<Tsmi(const Tsmi&)>& op, const Tsmi& b, const Tsmi& x) {
    const Tsmi mx = op(x);
    return 0.5 * std::real(dot(x, mx)) - std::real(dot(b, x));
}

} // namespace

Tsmi prox_f(const AcquisitionModel& model, const KSpace& y, const Tsmi& w,
            const ProxParams& params) {
    if (!(std::isfinite(params.weight) && params.weight > 0.0))
        throw std::domain_error("prox_f: weight must be finite and positive");

    Tsmi rhs = adjoint(model, y);
    rhs.data = 2.0 * rhs.data + params.weight * w.data;
    if (!same_shape(rhs, w))
        throw std::domain_error("prox_f: anchor shape mismatch");

    const auto op = [&](const Tsmi& v) {
        Tsmi out = normal(model, v);
        out.data = 2.0 * out.data + params.weight * v.data;
        return out;
    };

    // CG decreases its quadratic monotonically from the start point, so
    // starting at the anchor (or at a warm start that is already better)
    // guarantees the prox objective never exceeds its value at w.
    ProxParams cg_params = params;
    if (params.warm_start != nullptr &&
        quadratic_value(op, rhs, *params.warm_start) <= quadratic_value(op, rhs, w)) {
        cg_params.warm_start = params.warm_start;
    } else {
        cg_params.warm_start = &w;
    }
    return cg_solve(op, rhs, cg_params).x;
}

} // namespace mrf

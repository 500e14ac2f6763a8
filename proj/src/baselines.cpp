// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/baselines.hpp"

#include "mrfdiph/metrics.hpp"

#include <stdexcept>

namespace mrf {

namespace {

QMaps qmaps_from_match(const MatchResult& m, int h, int w) {
    QMaps q;
    q.h = h;
    q.w = w;
    q.t1_ms = m.t1_map;
    q.t2_ms = m.t2_map;
    q.rho = m.rho_map;
    q.mask.assign(static_cast<std::size_t>(h) * w, 1);
    return q;
}

} // namespace

ReconResult svdmrf(const KSpace& y, const AcquisitionModel& model, const Dictionary& dict) {
    ReconResult res;
    res.x_rec = adjoint(model, y);
    const MatchResult m = dict_match(res.x_rec, dict);
    res.q_rec = qmaps_from_match(m, model.h(), model.w());
    return res;
}

ReconResult admm_mrf(const KSpace& y, const AcquisitionModel& model, const Dictionary& dict,
                     const AdmmParams& params) {
    if (params.n_iters < 1)
        throw std::domain_error("admm_mrf: needs at least one iteration");
    if (!(params.gamma > 0.0))
        throw std::domain_error("admm_mrf: gamma must be positive");

    const int h = model.h();
    const int w = model.w();
    const int s = model.subspace();
    Tsmi x = Tsmi::zeros(h, w, s);
    Tsmi z = Tsmi::zeros(h, w, s);
    Tsmi u = Tsmi::zeros(h, w, s); // scaled dual
    MatchResult m;

    ReconResult res;
    res.kspace_trace.reserve(static_cast<std::size_t>(params.n_iters));
    bool have_x = false;
    for (int it = 0; it < params.n_iters; ++it) {
        Tsmi anchor = z;
        anchor.data = z.data - u.data;
        ProxParams pp = params.prox;
        pp.weight = params.gamma;
        pp.warm_start = have_x ? &x : nullptr;
        x = prox_f(model, y, anchor, pp);
        have_x = true;

        Tsmi arg = x;
        arg.data = x.data + u.data;
        m = dict_match(arg, dict);
        z = m.projected;
        u.data += x.data - z.data;

        if (!all_finite(x) || !all_finite(z) || !all_finite(u))
            throw numeric_error("admm_mrf: non-finite state at iteration " + std::to_string(it));
        res.kspace_trace.push_back(kspace_nrmse(y, model, z));
    }

    res.x_rec = z;
    res.q_rec = qmaps_from_match(m, h, w);
    return res;
}

} // namespace mrf

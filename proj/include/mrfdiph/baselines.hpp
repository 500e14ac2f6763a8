// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/acquisition.hpp"
#include "mrfdiph/dictionary.hpp"
#include "mrfdiph/phantom.hpp"
#include "mrfdiph/solvers.hpp"

#include <vector>

namespace mrf {

struct ReconResult {
    Tsmi x_rec;
    QMaps q_rec;
    std::vector<double> kspace_trace; ///< percent NRMSE per outer iteration
};

/// Zero-filled adjoint reconstruction followed by dictionary matching;
/// x_rec is the pre-projection adjoint image.
ReconResult svdmrf(const KSpace& y, const AcquisitionModel& model, const Dictionary& dict);

struct AdmmParams {
    int n_iters = 20;
    double gamma = 0.1;
    ProxParams prox;
};

/// Alternating directions between the k-space least-squares step (CG) and
/// the dictionary projection, with a scaled dual variable. Returns the
/// Bloch-consistent iterate and its qmaps.
ReconResult admm_mrf(const KSpace& y, const AcquisitionModel& model, const Dictionary& dict,
                     const AdmmParams& params);

} // namespace mrf

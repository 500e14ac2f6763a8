// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/dictionary.hpp"
#include "mrfdiph/epg.hpp"
#include "mrfdiph/tsmi.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace mrf {

/// Quantitative parameter maps: relaxation times (ms), complex proton
/// density, and a foreground mask. All vectors are length h*w with pixel
/// index p = y*w + x; background pixels are zero everywhere.
struct QMaps {
    int h = 0;
    int w = 0;
    Eigen::VectorXd t1_ms;
    Eigen::VectorXd t2_ms;
    Eigen::VectorXcd rho;
    std::vector<std::uint8_t> mask;

    int pixels() const { return h * w; }
};

/// Ellipse-composition brain-like phantom with a handful of tissue classes
/// assigned literature-typical (T1, T2) constants. When on_grid is given,
/// every tissue value snaps to its nearest LUT entry so the phantom is
/// exactly representable by the dictionary. Deterministic per seed.
QMaps make_phantom(int h, int w, std::uint64_t seed, const Lut* on_grid = nullptr);

/// Per-voxel x_v = rho_v * fingerprint(t1_v, t2_v); zero outside the mask.
/// Voxels sharing a (t1, t2) pair share one simulated fingerprint. Returns
/// the compressed series when a basis is supplied, the full series
/// otherwise.
Tsmi qmaps_to_tsmi(const QMaps& q, const SequenceParams& seq,
                   const Eigen::MatrixXcd* basis = nullptr);

} // namespace mrf

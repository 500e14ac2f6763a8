// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/common.hpp"

#include <Eigen/Dense>

#include <vector>

namespace mrf {

/// FISP acquisition settings: one RF excitation per TR, readout at TE,
/// one unit of gradient dephasing per TR, optional adiabatic inversion
/// followed by TI of recovery before the first pulse.
struct SequenceParams {
    std::vector<double> flip_angles_deg;
    double tr_ms = 10.0;
    double te_ms = 1.908;
    double ti_ms = 18.0;
    bool inversion = true;
    int n_epg_states = 0; ///< 0 selects the lossless default l/2 + 2

    int length() const { return static_cast<int>(flip_angles_deg.size()); }
    int effective_states() const;

    /// Throws std::domain_error when any invariant is violated.
    void validate() const;
};

/// Built-in half-sine flip-angle train sweeping lo..hi..lo degrees; a
/// stand-in train for experiments, not a reproduction of any published
/// per-frame schedule.
std::vector<double> sinusoidal_flip_ramp(int l, double lo_deg = 10.0, double hi_deg = 70.0);

std::vector<double> constant_flips(int l, double deg);

/// M0-normalized complex transverse signal at each TE.
using Fingerprint = Eigen::VectorXcd;

/// Simulates the FISP response for one (T1, T2) pair with the extended
/// phase graph formalism. RF pulses rotate about a fixed (y) axis; states
/// beyond seq.n_epg_states are silently truncated.
///
/// Pure function of its inputs; safe to call from many threads.
Fingerprint epg_fisp(double t1_ms, double t2_ms, const SequenceParams& seq);

} // namespace mrf

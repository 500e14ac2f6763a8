// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/epg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrf {

int SequenceParams::effective_states() const {
    if (n_epg_states > 0)
        return n_epg_states;
    // A coherence at order k needs k shifts out and k back before it can be
    // measured again, so orders above l/2 never reach the signal within the
    // train; this default is lossless.
    return std::max(2, length() / 2 + 2);
}

void SequenceParams::validate() const {
    if (length() < 1)
        throw std::domain_error("sequence: needs at least one flip angle");
    if (!(std::isfinite(tr_ms) && std::isfinite(te_ms) && std::isfinite(ti_ms)))
        throw std::domain_error("sequence: non-finite timing");
    if (!(tr_ms > te_ms && te_ms >= 0.0))
        throw std::domain_error("sequence: requires tr > te >= 0");
    if (inversion && ti_ms < 0.0)
        throw std::domain_error("sequence: negative inversion time");
    for (double a : flip_angles_deg)
        if (!(std::isfinite(a) && a >= 0.0 && a <= 180.0))
            throw std::domain_error("sequence: flip angles must lie in [0, 180] degrees");
    if (effective_states() < 2)
        throw std::domain_error("sequence: needs at least two EPG states");
}

std::vector<double> sinusoidal_flip_ramp(int l, double lo_deg, double hi_deg) {
    if (l < 1)
        throw std::domain_error("flip ramp: length must be positive");
    std::vector<double> flips(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i)
        flips[static_cast<std::size_t>(i)] =
            lo_deg + (hi_deg - lo_deg) * std::sin(kPi * (i + 0.5) / l);
    return flips;
}

std::vector<double> constant_flips(int l, double deg) {
    if (l < 1)
        throw std::domain_error("flip train: length must be positive");
    return std::vector<double>(static_cast<std::size_t>(l), deg);
}

namespace {

// Configuration-state ladder. fp[k] holds F(k), fm[k] holds F(-k)*, z[k]
// holds Z(k), k = 0..ns-1. With RF about the y axis all mixing
// coefficients are real and every state stays real throughout, so the
// ladder is stored as doubles; the recorded signal is F(0).
struct EpgState {
    std::vector<double> fp, fm, z;

    explicit EpgState(int ns)
        : fp(static_cast<std::size_t>(ns), 0.0),
          fm(static_cast<std::size_t>(ns), 0.0),
          z(static_cast<std::size_t>(ns), 0.0) {}

    int states() const { return static_cast<int>(fp.size()); }

    // Rotation by alpha about y. Derived from the standard EPG transition
    // matrix T(alpha, phi) at phi = 90 degrees, where all entries are real:
    //   F+' =  c2 F+ - s2 F- + sin(a) Z
    //   F-' = -s2 F+ + c2 F- + sin(a) Z
    //   Z'  = -sin(a)/2 (F+ + F-) + cos(a) Z
    // with c2 = cos^2(a/2), s2 = sin^2(a/2).
    void rf(double alpha_rad) {
        const double c2 = std::cos(alpha_rad / 2) * std::cos(alpha_rad / 2);
        const double s2 = std::sin(alpha_rad / 2) * std::sin(alpha_rad / 2);
        const double sa = std::sin(alpha_rad);
        const double ca = std::cos(alpha_rad);
        for (int k = 0; k < states(); ++k) {
            const double p = fp[static_cast<std::size_t>(k)];
            const double m = fm[static_cast<std::size_t>(k)];
            const double zz = z[static_cast<std::size_t>(k)];
            fp[static_cast<std::size_t>(k)] = c2 * p - s2 * m + sa * zz;
            fm[static_cast<std::size_t>(k)] = -s2 * p + c2 * m + sa * zz;
            z[static_cast<std::size_t>(k)] = -0.5 * sa * (p + m) + ca * zz;
        }
    }

    // T2 decay on transverse states, T1 decay plus M0=1 recovery on Z(0).
    void relax(double dt_ms, double t1_ms, double t2_ms) {
        if (dt_ms <= 0.0)
            return;
        const double e1 = std::exp(-dt_ms / t1_ms);
        const double e2 = std::exp(-dt_ms / t2_ms);
        for (int k = 0; k < states(); ++k) {
            fp[static_cast<std::size_t>(k)] *= e2;
            fm[static_cast<std::size_t>(k)] *= e2;
            z[static_cast<std::size_t>(k)] *= e1;
        }
        z[0] += 1.0 - e1;
    }

    // Unit gradient dephasing F(k) <- F(k-1). New F(0) comes from the
    // k = -1 state, i.e. fm[1]; the topmost F+ order falls off the ladder.
    void shift() {
        const int ns = states();
        for (int k = ns - 1; k >= 1; --k)
            fp[static_cast<std::size_t>(k)] = fp[static_cast<std::size_t>(k - 1)];
        fp[0] = fm[1];
        for (int k = 0; k + 1 < ns; ++k)
            fm[static_cast<std::size_t>(k)] = fm[static_cast<std::size_t>(k + 1)];
        fm[static_cast<std::size_t>(ns - 1)] = 0.0;
    }
};

} // namespace

Fingerprint epg_fisp(double t1_ms, double t2_ms, const SequenceParams& seq) {
    if (!(std::isfinite(t1_ms) && std::isfinite(t2_ms)))
        throw std::domain_error("epg_fisp: non-finite relaxation times");
    if (!(t1_ms > 0.0 && t2_ms > 0.0))
        throw std::domain_error("epg_fisp: relaxation times must be positive");
    if (t2_ms > t1_ms)
        throw std::domain_error("epg_fisp: requires t2 <= t1");
    seq.validate();

    const int l = seq.length();
    EpgState state(seq.effective_states());
    state.z[0] = 1.0;

    if (seq.inversion) {
        state.z[0] = -1.0;
        state.relax(seq.ti_ms, t1_ms, t2_ms);
    }

    Fingerprint signal(l);
    for (int i = 0; i < l; ++i) {
        state.rf(deg2rad(seq.flip_angles_deg[static_cast<std::size_t>(i)]));
        state.relax(seq.te_ms, t1_ms, t2_ms);
        signal[i] = cplx(state.fp[0], 0.0);
        state.relax(seq.tr_ms - seq.te_ms, t1_ms, t2_ms);
        state.shift();
    }
    return signal;
}

} // namespace mrf

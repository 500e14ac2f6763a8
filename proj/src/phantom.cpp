// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/phantom.hpp"

#include "mrfdiph/parallel.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>

namespace mrf {

namespace {

struct Ellipse {
    double cx, cy, ax, ay, angle;

    bool contains(double x, double y) const {
        const double dx = x - cx;
        const double dy = y - cy;
        const double ca = std::cos(angle);
        const double sa = std::sin(angle);
        const double u = (dx * ca + dy * sa) / ax;
        const double v = (-dx * sa + dy * ca) / ay;
        return u * u + v * v <= 1.0;
    }
};

struct Tissue {
    double t1, t2, rho_mag;
};

LutEntry snap_to_lut(double t1, double t2, const Lut& lut) {
    // Nearest entry in log coordinates, matching the usual log-spaced grids.
    double best = std::numeric_limits<double>::infinity();
    LutEntry out = lut.entries.front();
    for (const auto& e : lut.entries) {
        const double d1 = std::log(t1) - std::log(e.t1_ms);
        const double d2 = std::log(t2) - std::log(e.t2_ms);
        const double d = d1 * d1 + d2 * d2;
        if (d < best) {
            best = d;
            out = e;
        }
    }
    return out;
}

} // namespace

QMaps make_phantom(int h, int w, std::uint64_t seed, const Lut* on_grid) {
    if (h < 16 || w < 16)
        throw std::domain_error("make_phantom: grid must be at least 16x16");

    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x60642E2A34326F15ULL);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto jitter = [&](double v, double rel) { return v * (1.0 + rel * uni(rng)); };

    // White matter, grey matter, CSF, and an occasional lesion. Typical
    // literature values in ms; not tied to any particular scan.
    Tissue wm{800.0, 70.0, 0.85};
    Tissue gm{1300.0, 100.0, 1.0};
    Tissue csf{4000.0, 1800.0, 0.95};
    Tissue lesion{1600.0, 250.0, 0.9};
    if (on_grid != nullptr) {
        for (Tissue* t : {&wm, &gm, &csf, &lesion}) {
            const LutEntry e = snap_to_lut(t->t1, t->t2, *on_grid);
            t->t1 = e.t1_ms;
            t->t2 = e.t2_ms;
        }
    }

    const double cx = 0.5 * (w - 1);
    const double cy = 0.5 * (h - 1);
    const Ellipse brain{jitter(cx, 0.03), jitter(cy, 0.03), jitter(0.42 * w, 0.05),
                        jitter(0.45 * h, 0.05), 0.1 * uni(rng)};
    const Ellipse white{brain.cx, brain.cy + 0.04 * h, 0.78 * brain.ax, 0.74 * brain.ay,
                        brain.angle};
    const Ellipse vent_l{brain.cx - 0.12 * w, brain.cy - 0.02 * h, jitter(0.07 * w, 0.1),
                         jitter(0.16 * h, 0.1), -0.25};
    const Ellipse vent_r{brain.cx + 0.12 * w, brain.cy - 0.02 * h, vent_l.ax, vent_l.ay, 0.25};
    const bool has_lesion = (rng() & 1u) != 0;
    const Ellipse blob{brain.cx + 0.18 * w * uni(rng), brain.cy + 0.2 * h * uni(rng),
                       0.05 * w, 0.05 * h, 0.0};

    // Smooth proton-density modulation with a mild linear phase.
    const double phase0 = 0.5 * uni(rng);
    const double phase_gx = 0.4 * uni(rng);
    const double phase_gy = 0.4 * uni(rng);
    const double mod_phase = kPi * uni(rng);

    QMaps q;
    q.h = h;
    q.w = w;
    q.t1_ms = Eigen::VectorXd::Zero(h * w);
    q.t2_ms = Eigen::VectorXd::Zero(h * w);
    q.rho = Eigen::VectorXcd::Zero(h * w);
    q.mask.assign(static_cast<std::size_t>(h) * w, 0);

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double fx = static_cast<double>(x);
            const double fy = static_cast<double>(y);
            if (!brain.contains(fx, fy))
                continue;
            const Tissue* t = &gm;
            if (white.contains(fx, fy))
                t = &wm;
            if (vent_l.contains(fx, fy) || vent_r.contains(fx, fy))
                t = &csf;
            if (has_lesion && blob.contains(fx, fy))
                t = &lesion;

            const int p = y * w + x;
            q.mask[static_cast<std::size_t>(p)] = 1;
            q.t1_ms[p] = t->t1;
            q.t2_ms[p] = t->t2;
            const double mag =
                t->rho_mag * (1.0 + 0.08 * std::cos(2.0 * kPi * fx / w + mod_phase) *
                                         std::cos(2.0 * kPi * fy / h));
            const double ph = phase0 + phase_gx * fx / w + phase_gy * fy / h;
            q.rho[p] = std::polar(mag, ph);
        }
    return q;
}

Tsmi qmaps_to_tsmi(const QMaps& q, const SequenceParams& seq, const Eigen::MatrixXcd* basis) {
    seq.validate();
    const int l = seq.length();
    if (basis != nullptr && basis->rows() != l)
        throw std::domain_error("qmaps_to_tsmi: basis rows must equal the sequence length");
    const int channels = basis != nullptr ? static_cast<int>(basis->cols()) : l;
    const int hw = q.pixels();

    // One fingerprint per distinct (t1, t2); map ordering keeps the
    // evaluation set deterministic.
    std::map<std::pair<double, double>, int> unique;
    for (int p = 0; p < hw; ++p)
        if (q.mask[static_cast<std::size_t>(p)])
            unique.emplace(std::make_pair(q.t1_ms[p], q.t2_ms[p]), 0);
    int next = 0;
    for (auto& kv : unique)
        kv.second = next++;

    Eigen::MatrixXcd fingerprints(next, channels);
    std::vector<std::pair<double, double>> keys;
    keys.reserve(static_cast<std::size_t>(next));
    for (const auto& kv : unique)
        keys.push_back(kv.first);
    parallel_for(next, [&](std::int64_t i) {
        const Fingerprint f =
            epg_fisp(keys[static_cast<std::size_t>(i)].first, keys[static_cast<std::size_t>(i)].second, seq);
        if (basis != nullptr)
            fingerprints.row(i) = f.transpose() * (*basis);
        else
            fingerprints.row(i) = f.transpose();
    });

    Tsmi out = Tsmi::zeros(q.h, q.w, channels);
    parallel_for(hw, [&](std::int64_t p) {
        if (!q.mask[static_cast<std::size_t>(p)])
            return;
        const auto it = unique.find(std::make_pair(q.t1_ms[p], q.t2_ms[p]));
        out.data.row(p) = q.rho[p] * fingerprints.row(it->second);
    });
    return out;
}

} // namespace mrf

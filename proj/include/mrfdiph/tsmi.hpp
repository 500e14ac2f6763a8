// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/common.hpp"

#include <Eigen/Dense>

namespace mrf {

/// Time-series of magnetization images: one complex image per channel, where
/// a channel is either a time frame (full series, l channels) or a subspace
/// coefficient (compressed series, s channels).
///
/// Storage is (h*w) x channels with pixel index p = y*w + x, so each
/// channel's image is a contiguous column.
struct Tsmi {
    int h = 0;
    int w = 0;
    Eigen::MatrixXcd data;

    Tsmi() = default;
    Tsmi(int h_, int w_, Eigen::MatrixXcd d) : h(h_), w(w_), data(std::move(d)) {}

    static Tsmi zeros(int h, int w, int channels) {
        return Tsmi(h, w, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(h) * w, channels));
    }

    int channels() const { return static_cast<int>(data.cols()); }
    int pixels() const { return h * w; }
};

inline bool same_shape(const Tsmi& a, const Tsmi& b) {
    return a.h == b.h && a.w == b.w && a.data.cols() == b.data.cols();
}

/// Euclidean norm over all entries.
inline double norm(const Tsmi& x) { return x.data.norm(); }

/// sum_i conj(a_i) * b_i over all entries, in a fixed order.
inline cplx dot(const Tsmi& a, const Tsmi& b) {
    return Eigen::Map<const Eigen::VectorXcd>(a.data.data(), a.data.size())
        .dot(Eigen::Map<const Eigen::VectorXcd>(b.data.data(), b.data.size()));
}

inline bool all_finite(const Tsmi& x) { return x.data.allFinite(); }

} // namespace mrf

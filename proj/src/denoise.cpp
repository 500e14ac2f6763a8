// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/denoise.hpp"

#include "mrfdiph/parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mrf {

namespace {

// Mirror without edge repetition: ...2 1 0 | 0 1 2... maps -1 -> 0, n -> n-1.
int reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0)
            i = -i - 1;
        if (i >= n)
            i = 2 * n - 1 - i;
    }
    return i;
}

std::vector<double> gaussian_taps(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-0.5 * i * i / (sigma * sigma));
        taps[static_cast<std::size_t>(i + radius)] = v;
        sum += v;
    }
    for (double& t : taps)
        t /= sum;
    return taps;
}

} // namespace

Tsmi gaussian_blur(const Tsmi& x, double sigma_px) {
    if (sigma_px <= 0.0)
        return x;
    const auto taps = gaussian_taps(sigma_px);
    const int radius = static_cast<int>(taps.size() / 2);
    const int h = x.h;
    const int w = x.w;

    Tsmi out = x;
    parallel_for(x.channels(), [&](std::int64_t ch) {
        Eigen::VectorXcd tmp(static_cast<Eigen::Index>(h) * w);
        const auto src = out.data.col(ch);
        // horizontal pass
        for (int y = 0; y < h; ++y)
            for (int xx = 0; xx < w; ++xx) {
                cplx acc(0.0, 0.0);
                for (int k = -radius; k <= radius; ++k)
                    acc += taps[static_cast<std::size_t>(k + radius)] *
                           src[static_cast<Eigen::Index>(y) * w + reflect(xx + k, w)];
                tmp[static_cast<Eigen::Index>(y) * w + xx] = acc;
            }
        // vertical pass
        auto dst = out.data.col(ch);
        for (int y = 0; y < h; ++y)
            for (int xx = 0; xx < w; ++xx) {
                cplx acc(0.0, 0.0);
                for (int k = -radius; k <= radius; ++k)
                    acc += taps[static_cast<std::size_t>(k + radius)] *
                           tmp[static_cast<Eigen::Index>(reflect(y + k, h)) * w + xx];
                dst[static_cast<Eigen::Index>(y) * w + xx] = acc;
            }
    });
    return out;
}

Tsmi estimate_noise(const NoiseEstimatorSpec& spec, const Tsmi& x_t, double alpha_bar_t) {
    if (!(alpha_bar_t > 0.0 && alpha_bar_t < 1.0))
        throw std::domain_error("estimate_noise: alpha_bar must lie in (0, 1)");
    const double sa = std::sqrt(alpha_bar_t);
    const double sn = std::sqrt(1.0 - alpha_bar_t);

    switch (spec.kind) {
    case EstimatorKind::Zero:
        return Tsmi::zeros(x_t.h, x_t.w, x_t.channels());

    case EstimatorKind::Oracle: {
        if (!spec.oracle_x0.has_value())
            throw std::domain_error("estimate_noise: oracle estimator needs oracle_x0");
        const Tsmi& x0 = *spec.oracle_x0;
        if (!same_shape(x0, x_t))
            throw std::domain_error("estimate_noise: oracle_x0 shape mismatch");
        Tsmi eps = x_t;
        eps.data = (x_t.data - sa * x0.data) / sn;
        return eps;
    }

    case EstimatorKind::Smoother: {
        if (!std::isfinite(spec.smoother_sigma_px) || spec.smoother_sigma_px < 0.0)
            throw std::domain_error("estimate_noise: smoother sigma must be finite and >= 0");
        Tsmi scaled = x_t;
        scaled.data /= sa;
        Tsmi x0 = gaussian_blur(scaled, spec.smoother_sigma_px * sn);
        if (spec.conditioned) {
            if (!spec.condition.has_value())
                throw std::domain_error("estimate_noise: conditioned smoother needs a condition image");
            if (!same_shape(*spec.condition, x_t))
                throw std::domain_error("estimate_noise: condition shape mismatch");
            x0.data = 0.5 * (x0.data + spec.condition->data);
        }
        Tsmi eps = x_t;
        eps.data = (x_t.data - sa * x0.data) / sn;
        return eps;
    }
    }
    throw std::domain_error("estimate_noise: unknown estimator kind");
}

} // namespace mrf

// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/tsmi.hpp"

#include <optional>

namespace mrf {

enum class EstimatorKind {
    Oracle,   ///< inverts the noising identity against a known clean image
    Zero,     ///< predicts no noise (clean estimate = x_t / sqrt(abar))
    Smoother, ///< Gaussian-blur prior, optionally blended with a condition image
};

/// Analytic stand-ins for a trained noise-estimation network. Each kind is
/// characterized by the clean-image estimate it implies; the returned noise
/// always satisfies x_t = sqrt(abar) * x0_est + sqrt(1 - abar) * eps.
struct NoiseEstimatorSpec {
    EstimatorKind kind = EstimatorKind::Zero;
    std::optional<Tsmi> oracle_x0;
    double smoother_sigma_px = 0.0; ///< blur scale at unit noise level
    bool conditioned = false;
    std::optional<Tsmi> condition; ///< x_c, blended into the smoother estimate
};

/// Per-channel separable Gaussian blur with mirrored boundaries; sigma <= 0
/// is the identity.
Tsmi gaussian_blur(const Tsmi& x, double sigma_px);

/// Noise estimate for the sample x_t at noise level alpha_bar_t in (0, 1).
/// Pure function; safe to call concurrently.
Tsmi estimate_noise(const NoiseEstimatorSpec& spec, const Tsmi& x_t, double alpha_bar_t);

} // namespace mrf

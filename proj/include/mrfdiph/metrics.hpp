// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/acquisition.hpp"
#include "mrfdiph/tsmi.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace mrf {

/// 100 * mean over masked pixels of |est - ref| / |ref|. The mask must be
/// nonempty and must not cover zero-reference pixels.
double mape(const Eigen::VectorXd& est, const Eigen::VectorXd& ref,
            const std::vector<std::uint8_t>& mask);

/// 100 * ||est - ref|| / ||ref||, per channel and averaged when
/// channel_averaged, otherwise on the flattened arrays.
double nrmse(const Tsmi& est, const Tsmi& ref, bool channel_averaged);

/// Global NRMSE (percent) between y and forward(x_rec), restricted to the
/// sampled k-space locations.
double kspace_nrmse(const KSpace& y, const AcquisitionModel& model, const Tsmi& x_rec);

} // namespace mrf

// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <string>

namespace mrf {

/// Binary (P5) grayscale image of the h x w values, windowed to [lo, hi]
/// and quantized to 8 bits.
void write_pgm(const std::string& path, int h, int w, const Eigen::VectorXd& values, double lo,
               double hi);

} // namespace mrf

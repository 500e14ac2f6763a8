// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/pgm.hpp"

#include "mrfdiph/common.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

namespace mrf {

void write_pgm(const std::string& path, int h, int w, const Eigen::VectorXd& values, double lo,
               double hi) {
    if (values.size() != static_cast<Eigen::Index>(h) * w)
        throw io_error("write_pgm: value count disagrees with dimensions");
    if (!(hi > lo))
        throw io_error("write_pgm: window must satisfy hi > lo");

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out << "P5\n" << w << ' ' << h << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = (values[static_cast<Eigen::Index>(y) * w + x] - lo) / (hi - lo);
            const double q = std::clamp(v, 0.0, 1.0) * 255.0;
            row[static_cast<std::size_t>(x)] = static_cast<unsigned char>(std::lround(q));
        }
        out.write(reinterpret_cast<const char*>(row.data()), w);
    }
    if (!out)
        throw io_error("write failed: " + path);
}

} // namespace mrf

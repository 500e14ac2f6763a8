// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mrf {

double mape(const Eigen::VectorXd& est, const Eigen::VectorXd& ref,
            const std::vector<std::uint8_t>& mask) {
    if (est.size() != ref.size() || static_cast<std::size_t>(est.size()) != mask.size())
        throw std::domain_error("mape: shape mismatch");
    double sum = 0.0;
    long count = 0;
    for (Eigen::Index i = 0; i < ref.size(); ++i) {
        if (!mask[static_cast<std::size_t>(i)])
            continue;
        if (ref[i] == 0.0)
            throw std::domain_error("mape: mask covers a zero-reference pixel");
        sum += std::abs(est[i] - ref[i]) / std::abs(ref[i]);
        ++count;
    }
    if (count == 0)
        throw std::domain_error("mape: empty mask");
    return 100.0 * sum / static_cast<double>(count);
}

double nrmse(const Tsmi& est, const Tsmi& ref, bool channel_averaged) {
    if (!same_shape(est, ref))
        throw std::domain_error("nrmse: shape mismatch");
    if (channel_averaged) {
        double acc = 0.0;
        for (int c = 0; c < ref.channels(); ++c) {
            const double denom = ref.data.col(c).norm();
            if (denom == 0.0)
                throw std::domain_error("nrmse: zero-norm reference channel");
            acc += (est.data.col(c) - ref.data.col(c)).norm() / denom;
        }
        return 100.0 * acc / ref.channels();
    }
    const double denom = ref.data.norm();
    if (denom == 0.0)
        throw std::domain_error("nrmse: zero-norm reference");
    return 100.0 * (est.data - ref.data).norm() / denom;
}

double kspace_nrmse(const KSpace& y, const AcquisitionModel& model, const Tsmi& x_rec) {
    const KSpace pred = forward(model, x_rec);
    if (y.data.rows() != pred.data.rows() || y.data.cols() != pred.data.cols())
        throw std::domain_error("kspace_nrmse: shape mismatch");
    const int l = model.n_frames();
    double num = 0.0;
    double denom = 0.0;
    for (Eigen::Index col = 0; col < y.data.cols(); ++col) {
        const int t = static_cast<int>(col % l);
        for (Eigen::Index p = 0; p < y.data.rows(); ++p) {
            if (!model.masks.masks(p, t))
                continue;
            num += std::norm(y.data(p, col) - pred.data(p, col));
            denom += std::norm(y.data(p, col));
        }
    }
    if (denom == 0.0)
        throw std::domain_error("kspace_nrmse: zero-norm measurements");
    return 100.0 * std::sqrt(num / denom);
}

} // namespace mrf

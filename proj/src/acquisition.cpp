// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/acquisition.hpp"

#include "mrfdiph/fft.hpp"
#include "mrfdiph/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace mrf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

CoilMaps make_coils(int c, int h, int w, std::uint64_t seed) {
    if (c < 1)
        throw std::domain_error("make_coils: coil count must be >= 1");
    if (h < 1 || w < 1)
        throw std::domain_error("make_coils: image dimensions must be positive");

    const int hw = h * w;
    CoilMaps maps;
    maps.h = h;
    maps.w = w;
    maps.sens.resize(hw, c);

    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_real_distribution<double> jitter(-0.08, 0.08);

    const double sigma = 0.6 * std::max(h, w);
    for (int k = 0; k < c; ++k) {
        // Bump centers ring the field of view; a single coil sits at angle 0
        // with zero phase so its normalized map is exactly 1.
        const double ang = 2.0 * kPi * k / c + (c > 1 ? jitter(rng) : 0.0);
        const double cx = 0.5 * (w - 1) + 0.45 * w * std::cos(ang);
        const double cy = 0.5 * (h - 1) + 0.45 * h * std::sin(ang);
        const cplx phase = std::polar(1.0, c > 1 ? 2.0 * kPi * k / c : 0.0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                maps.sens(static_cast<Eigen::Index>(y) * w + x, k) =
                    phase * std::exp(-r2 / (2.0 * sigma * sigma));
            }
    }

    for (int p = 0; p < hw; ++p) {
        const double sos = maps.sens.row(p).norm();
        maps.sens.row(p) /= sos;
    }
    return maps;
}

FrameMasks make_masks(int l, int h, int w, double R, std::uint64_t seed, MaskScheme scheme) {
    if (l < 1)
        throw std::domain_error("make_masks: frame count must be >= 1");
    if (h < 1 || w < 1)
        throw std::domain_error("make_masks: grid dimensions must be positive");
    if (!(R >= 1.0) || !std::isfinite(R))
        throw std::domain_error("make_masks: acceleration factor must be >= 1");

    const int hw = h * w;
    const int m = static_cast<int>(std::llround(hw / R));
    if (m < 1)
        throw std::domain_error("make_masks: acceleration factor leaves frames empty");

    FrameMasks fm;
    fm.h = h;
    fm.w = w;
    fm.seed = seed;
    fm.masks.setZero(hw, l);

    // Gaussian radial weights on wrapped frequencies, plus a floor so the
    // periphery keeps a nonzero pick probability.
    std::vector<double> weight(static_cast<std::size_t>(hw), 1.0);
    if (scheme == MaskScheme::VariableDensity) {
        const double sigma_k = 0.18 * std::min(h, w);
        for (int ky = 0; ky < h; ++ky)
            for (int kx = 0; kx < w; ++kx) {
                const double fy = std::min(ky, h - ky);
                const double fx = std::min(kx, w - kx);
                const double r2 = fx * fx + fy * fy;
                weight[static_cast<std::size_t>(ky) * w + kx] =
                    std::exp(-r2 / (2.0 * sigma_k * sigma_k)) + 0.01;
            }
    }

    // Frames are independent given their sub-seed, so the loop may run on
    // any thread layout with identical output.
    parallel_for(l, [&](std::int64_t t) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x1234ABCDULL + static_cast<std::uint64_t>(t))));
        if (m >= hw) {
            fm.masks.col(t).setOnes();
            return;
        }
        if (scheme == MaskScheme::Uniform) {
            // Partial Fisher-Yates: exactly m samples per frame.
            std::vector<int> idx(static_cast<std::size_t>(hw));
            std::iota(idx.begin(), idx.end(), 0);
            for (int i = 0; i < m; ++i) {
                std::uniform_int_distribution<int> pick(i, hw - 1);
                std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
                fm.masks(idx[static_cast<std::size_t>(i)], t) = 1;
            }
        } else {
            // Weighted sampling without replacement via exponential keys;
            // DC is always included.
            fm.masks(0, t) = 1;
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            std::vector<std::pair<double, int>> keys;
            keys.reserve(static_cast<std::size_t>(hw - 1));
            for (int p = 1; p < hw; ++p) {
                const double u = uni(rng);
                keys.emplace_back(-std::log(u) / weight[static_cast<std::size_t>(p)], p);
            }
            const int extra = m - 1;
            std::partial_sort(keys.begin(), keys.begin() + extra, keys.end());
            for (int i = 0; i < extra; ++i)
                fm.masks(keys[static_cast<std::size_t>(i)].second, t) = 1;
        }
    });
    return fm;
}

AcquisitionModel make_model(CoilMaps coils, FrameMasks masks, Eigen::MatrixXcd basis) {
    if (coils.h != masks.h || coils.w != masks.w)
        throw std::domain_error("make_model: coil and mask grids disagree");
    if (basis.rows() != masks.frames())
        throw std::domain_error("make_model: basis rows must equal the frame count");
    if (basis.cols() < 1 || basis.cols() > basis.rows())
        throw std::domain_error("make_model: basis must be tall with at least one column");
    const Eigen::MatrixXcd gram = basis.adjoint() * basis;
    const double dev = (gram - Eigen::MatrixXcd::Identity(basis.cols(), basis.cols())).norm();
    if (dev > 1e-6)
        throw std::domain_error("make_model: basis columns are not orthonormal");

    AcquisitionModel model;
    model.coils = std::move(coils);
    model.masks = std::move(masks);
    model.basis = std::move(basis);
    return model;
}

namespace {

void check_tsmi(const AcquisitionModel& model, const Tsmi& x) {
    if (x.h != model.h() || x.w != model.w())
        throw std::domain_error("acquisition: image grid mismatch");
    if (x.channels() != model.subspace())
        throw std::domain_error("acquisition: channel count must equal the subspace size");
}

void check_kspace(const AcquisitionModel& model, const KSpace& y) {
    if (y.h != model.h() || y.w != model.w() || y.coils != model.n_coils() ||
        y.frames != model.n_frames())
        throw std::domain_error("acquisition: k-space shape mismatch");
}

// conj(sens_c) .* IFFT(mask_t .* y_col), accumulated over coils in coil
// order. The mask is applied to the input regardless of its stored zeros so
// the map is the exact adjoint for arbitrary input.
void adjoint_frame(const AcquisitionModel& model, const Eigen::MatrixXcd& kdata, int t,
                   Eigen::Ref<Eigen::VectorXcd> out) {
    const int hw = model.h() * model.w();
    const int l = model.n_frames();
    std::vector<cplx> tmp(static_cast<std::size_t>(hw));
    std::vector<cplx> img(static_cast<std::size_t>(hw));
    out.setZero();
    for (int c = 0; c < model.n_coils(); ++c) {
        const auto col = kdata.col(static_cast<Eigen::Index>(c) * l + t);
        for (int p = 0; p < hw; ++p)
            tmp[static_cast<std::size_t>(p)] = model.masks.masks(p, t) ? col[p] : cplx(0.0, 0.0);
        ifft2(tmp.data(), img.data(), model.h(), model.w());
        for (int p = 0; p < hw; ++p)
            out[p] += std::conj(model.coils.sens(p, c)) * img[static_cast<std::size_t>(p)];
    }
}

} // namespace

KSpace forward(const AcquisitionModel& model, const Tsmi& x) {
    check_tsmi(model, x);
    const int hw = model.h() * model.w();
    const int c = model.n_coils();
    const int l = model.n_frames();

    const Eigen::MatrixXcd full = x.data * model.basis.adjoint(); // hw x l
    KSpace y = KSpace::zeros(model.h(), model.w(), c, l);

    parallel_for(static_cast<std::int64_t>(c) * l, [&](std::int64_t idx) {
        const int coil = static_cast<int>(idx / l);
        const int t = static_cast<int>(idx % l);
        std::vector<cplx> tmp(static_cast<std::size_t>(hw));
        std::vector<cplx> freq(static_cast<std::size_t>(hw));
        for (int p = 0; p < hw; ++p)
            tmp[static_cast<std::size_t>(p)] = model.coils.sens(p, coil) * full(p, t);
        fft2(tmp.data(), freq.data(), model.h(), model.w());
        auto col = y.data.col(idx);
        for (int p = 0; p < hw; ++p)
            col[p] = model.masks.masks(p, t) ? freq[static_cast<std::size_t>(p)] : cplx(0.0, 0.0);
    });
    return y;
}

Tsmi adjoint(const AcquisitionModel& model, const KSpace& y) {
    check_kspace(model, y);
    const int hw = model.h() * model.w();
    const int l = model.n_frames();

    Eigen::MatrixXcd full(hw, l);
    parallel_for(l, [&](std::int64_t t) {
        adjoint_frame(model, y.data, static_cast<int>(t), full.col(t));
    });

    // Fixed row blocks so the final compression is thread-count invariant.
    Tsmi out = Tsmi::zeros(model.h(), model.w(), model.subspace());
    constexpr int kBlock = 256;
    const std::int64_t nblocks = (hw + kBlock - 1) / kBlock;
    parallel_for(nblocks, [&](std::int64_t b) {
        const int row0 = static_cast<int>(b) * kBlock;
        const int nrows = std::min(kBlock, hw - row0);
        out.data.middleRows(row0, nrows) = full.middleRows(row0, nrows) * model.basis;
    });
    return out;
}

Tsmi normal(const AcquisitionModel& model, const Tsmi& x) {
    check_tsmi(model, x);
    const int hw = model.h() * model.w();
    const int c = model.n_coils();
    const int l = model.n_frames();

    const Eigen::MatrixXcd full = x.data * model.basis.adjoint();
    Eigen::MatrixXcd out_full(hw, l);

    parallel_for(l, [&](std::int64_t ti) {
        const int t = static_cast<int>(ti);
        std::vector<cplx> tmp(static_cast<std::size_t>(hw));
        std::vector<cplx> freq(static_cast<std::size_t>(hw));
        std::vector<cplx> img(static_cast<std::size_t>(hw));
        auto acc = out_full.col(t);
        acc.setZero();
        for (int coil = 0; coil < c; ++coil) {
            for (int p = 0; p < hw; ++p)
                tmp[static_cast<std::size_t>(p)] = model.coils.sens(p, coil) * full(p, t);
            fft2(tmp.data(), freq.data(), model.h(), model.w());
            for (int p = 0; p < hw; ++p)
                if (!model.masks.masks(p, t))
                    freq[static_cast<std::size_t>(p)] = cplx(0.0, 0.0);
            ifft2(freq.data(), img.data(), model.h(), model.w());
            for (int p = 0; p < hw; ++p)
                acc[p] += std::conj(model.coils.sens(p, coil)) * img[static_cast<std::size_t>(p)];
        }
    });

    Tsmi out = Tsmi::zeros(model.h(), model.w(), model.subspace());
    constexpr int kBlock = 256;
    const std::int64_t nblocks = (hw + kBlock - 1) / kBlock;
    parallel_for(nblocks, [&](std::int64_t b) {
        const int row0 = static_cast<int>(b) * kBlock;
        const int nrows = std::min(kBlock, hw - row0);
        out.data.middleRows(row0, nrows) = out_full.middleRows(row0, nrows) * model.basis;
    });
    return out;
}

} // namespace mrf

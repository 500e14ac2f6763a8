// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/tsmi.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace mrf {

/// Receive sensitivities, (h*w) x c, normalized to unit sum-of-squares at
/// every pixel.
struct CoilMaps {
    int h = 0;
    int w = 0;
    Eigen::MatrixXcd sens;
    int coils() const { return static_cast<int>(sens.cols()); }
};

/// Per-frame k-space sampling patterns, (h*w) x l, nonzero = sampled.
/// Pixel index p = ky*w + kx with DC at p = 0 (unshifted DFT layout).
struct FrameMasks {
    int h = 0;
    int w = 0;
    std::uint64_t seed = 0;
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> masks;
    int frames() const { return static_cast<int>(masks.cols()); }
};

enum class MaskScheme { Uniform, VariableDensity };

/// Smooth Gaussian-bump sensitivities with per-coil constant phase,
/// sum-of-squares normalized. Deterministic per seed; c = 1 yields an
/// all-ones map.
CoilMaps make_coils(int c, int h, int w, std::uint64_t seed);

/// Per-frame masks sampling round(h*w/R) locations each. The
/// variable-density scheme draws from a Gaussian radial profile and always
/// includes DC. Deterministic per seed; throws std::domain_error when a
/// frame would be empty.
FrameMasks make_masks(int l, int h, int w, double R, std::uint64_t seed, MaskScheme scheme);

/// Multi-coil undersampled measurements, (h*w) x (c*l), column = coil*l +
/// frame; entries outside each frame's mask are exactly zero.
struct KSpace {
    int h = 0;
    int w = 0;
    int coils = 0;
    int frames = 0;
    Eigen::MatrixXcd data;

    static KSpace zeros(int h, int w, int coils, int frames) {
        KSpace y;
        y.h = h;
        y.w = w;
        y.coils = coils;
        y.frames = frames;
        y.data = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(h) * w,
                                        static_cast<Eigen::Index>(coils) * frames);
        return y;
    }
};

/// The linear acquisition operator: per frame, coil-weight the image,
/// unitary 2-D FFT, apply the frame mask; the temporal basis maps between
/// the l frames and s subspace channels.
struct AcquisitionModel {
    CoilMaps coils;
    FrameMasks masks;
    Eigen::MatrixXcd basis; ///< l x s, orthonormal columns

    int h() const { return coils.h; }
    int w() const { return coils.w; }
    int n_coils() const { return coils.coils(); }
    int n_frames() const { return masks.frames(); }
    int subspace() const { return static_cast<int>(basis.cols()); }
};

/// Validates shapes and basis orthonormality (1e-6) and assembles the model.
AcquisitionModel make_model(CoilMaps coils, FrameMasks masks, Eigen::MatrixXcd basis);

KSpace forward(const AcquisitionModel& model, const Tsmi& x);
Tsmi adjoint(const AcquisitionModel& model, const KSpace& y);

/// adjoint(forward(x)) as one fused, k-space-free evaluation.
Tsmi normal(const AcquisitionModel& model, const Tsmi& x);

} // namespace mrf

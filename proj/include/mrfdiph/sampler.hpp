// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/acquisition.hpp"
#include "mrfdiph/denoise.hpp"
#include "mrfdiph/dictionary.hpp"
#include "mrfdiph/phantom.hpp"
#include "mrfdiph/solvers.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace mrf {

/// Diffusion noise schedule plus the K-step sub-sequence and the per-step
/// splitting weights derived from it:
///   sigma2_k = (1 - abar_{t_k}) / abar_{t_k},  mu_k = lambda / sigma2_k,
///   gamma_k = tau * mu_k.
struct DiffusionSchedule {
    int T = 0;
    Eigen::VectorXd beta;      ///< length T
    Eigen::VectorXd alpha_bar; ///< length T, strictly decreasing
    std::vector<int> steps;    ///< K entries t_k in [1, T], strictly increasing
    Eigen::VectorXd sigma2;    ///< length K
    Eigen::VectorXd mu;        ///< length K
    Eigen::VectorXd gamma;     ///< length K

    int K() const { return static_cast<int>(steps.size()); }
    double alpha_bar_at(int k) const { return alpha_bar[steps[static_cast<std::size_t>(k)] - 1]; }
};

/// Linearly spaced betas over [beta0, betaT] inclusive and their running
/// product alpha_bar_t = prod_{i<=t} (1 - beta_i).
std::pair<Eigen::VectorXd, Eigen::VectorXd> make_schedule(int T, double beta0, double betaT);

/// K step indices evenly spaced by rounding over [1, T], strictly
/// increasing, ending at T.
std::vector<int> subsample_steps(int T, int K);

DiffusionSchedule make_diffusion_schedule(int T, double beta0, double betaT, int K, double lambda,
                                          double tau);

enum class SamplerMode {
    Base,       ///< full loop: denoise, k-space prox, dictionary projection, dual
    KSpaceOnly, ///< no dictionary projection inside the loop
    DdmOnly,    ///< denoising only; physics steps inert
};

/// Which clean estimate feeds the deterministic reinjected noise.
enum class NoiseSource { BlochConsistent, KSpaceConsistent };

struct SamplerParams {
    int K = 30;
    double lambda = 1e-4;
    double tau = 0.01;
    double xi = 1.0; ///< stochastic/deterministic noise mix in [0, 1]
    ProxParams prox;
    SamplerMode mode = SamplerMode::Base;
    NoiseSource noise_source = NoiseSource::BlochConsistent;
    std::uint64_t seed = 0;
};

struct StepTrace {
    int step = 0; ///< k, counting down from K
    double sigma2 = 0.0;
    double mu = 0.0;
    double gamma = 0.0;
    double kspace_nrmse = 0.0;          ///< percent, on the Bloch-consistent iterate
    std::optional<double> tsmi_nrmse;   ///< percent vs. ground truth, when supplied
};

struct SampleResult {
    Tsmi x_rec;
    QMaps q_rec;
    std::vector<StepTrace> trace;
};

/// Unit-variance complex Gaussian entries (real and imaginary parts i.i.d.
/// N(0, 1/2)), drawn channel-major in a fixed order.
Tsmi draw_complex_gaussian(std::mt19937_64& rng, int h, int w, int channels);

/// Physics-guided diffusion reconstruction. Runs K steps of: denoise via
/// the estimator, pull toward the measurements with prox_f, project onto
/// the dictionary, update the dual variable, then renoise at the next
/// level mixing stochastic and deterministic noise by xi. Deterministic
/// given the seed, independent of the worker thread count.
SampleResult mrf_diph_sample(const KSpace& y, const AcquisitionModel& model,
                             const Dictionary& dict, const NoiseEstimatorSpec& estimator,
                             const DiffusionSchedule& sched, const SamplerParams& params,
                             const Tsmi* ground_truth = nullptr);

/// Writes the per-step trace as CSV with header
/// step,sigma2,mu,gamma,kspace_nrmse,tsmi_nrmse.
void write_trace_csv(const std::string& path, const std::vector<StepTrace>& trace);

} // namespace mrf

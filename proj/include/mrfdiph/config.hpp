// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/common.hpp"
#include "mrfdiph/dictionary.hpp"

#include <cstdint>
#include <string>

namespace mrf {

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    GridSpacing spacing = GridSpacing::Log;

    GridRange range() const { return {lo, hi, count}; }
};

/// Flat key=value experiment configuration ('#' starts a comment). Unknown
/// keys are rejected; command-line overrides reuse set_key_value.
struct ExperimentConfig {
    // phantom.*
    int phantom_h = 64;
    int phantom_w = 64;
    std::uint64_t phantom_seed = 7;

    // seq.*  (ti = 0 disables the inversion prepulse)
    int seq_l = 200;
    double seq_tr = 10.0;
    double seq_te = 1.908;
    double seq_ti = 18.0;
    std::string seq_flip_scheme = "sinramp";

    // dict.*
    GridSpec dict_t1{100.0, 4500.0, 60, GridSpacing::Log};
    GridSpec dict_t2{10.0, 2500.0, 60, GridSpacing::Log};
    int dict_s = 5;

    // acq.*
    int acq_c = 8;
    double acq_r = 5.0;
    std::string acq_scheme = "variable-density";
    std::uint64_t acq_seed = 11;

    // sampler.*
    int sampler_t = 1000;
    int sampler_k = 30;
    double sampler_lambda = 1e-4;
    double sampler_tau = 0.01;
    double sampler_xi = 1.0;
    std::string sampler_mode = "base";
    int sampler_cg_iters = 5;
    double sampler_cg_tol = 1e-6;
    std::uint64_t sampler_seed = 1;
    std::string sampler_noise_source = "z";
    std::string estimator_kind = "smoother";
    double estimator_sigma_px = 1.0;
    bool estimator_conditioned = true;

    std::string recon_method = "diph";
    std::string out_dir = "out";

    static ExperimentConfig from_file(const std::string& path);

    /// Throws config_error naming the key on unknown keys or bad values.
    void set_key_value(const std::string& key, const std::string& value);
};

} // namespace mrf

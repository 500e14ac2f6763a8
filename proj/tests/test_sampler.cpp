// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/sampler.hpp"

#include "mrfdiph/metrics.hpp"
#include "mrfdiph/parallel.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

using namespace mrf;

namespace {

struct DeskSetup {
    SequenceParams seq;
    Dictionary dict;
    QMaps qmaps;
    AcquisitionModel model;
    Tsmi x_ref; // compressed Bloch-consistent reference
    KSpace y;
};

DeskSetup small_setup(int hw_side = 32, int l = 48, int s = 4, std::uint64_t seed = 3) {
    DeskSetup d;
    d.seq.flip_angles_deg = sinusoidal_flip_ramp(l);
    d.seq.tr_ms = 10.0;
    d.seq.te_ms = 1.908;
    d.seq.ti_ms = 18.0;
    d.seq.inversion = true;

    const Lut lut = build_grid({100.0, 4500.0, 16}, {10.0, 2500.0, 16}, GridSpacing::Log);
    d.dict = build_dictionary(lut, d.seq, s);
    d.qmaps = make_phantom(hw_side, hw_side, seed, &d.dict.lut);
    d.model = make_model(make_coils(2, hw_side, hw_side, seed + 1),
                         make_masks(l, hw_side, hw_side, 3.0, seed + 2, MaskScheme::VariableDensity),
                         d.dict.basis);
    d.x_ref = qmaps_to_tsmi(d.qmaps, d.seq, &d.dict.basis);
    d.y = forward(d.model, d.x_ref);
    return d;
}

SamplerParams oracle_params(int K, std::uint64_t seed = 17) {
    SamplerParams p;
    p.K = K;
    p.lambda = 1e-4;
    p.tau = 0.01;
    p.xi = 0.0;
    p.prox.max_cg_iters = 5;
    p.prox.cg_tol = 1e-6;
    p.mode = SamplerMode::Base;
    p.seed = seed;
    return p;
}

} // namespace

TEST_CASE("make_schedule trivial cases") {
    {
        const auto [beta, abar] = make_schedule(1, 0.5, 0.5);
        REQUIRE(beta.size() == 1);
        CHECK(beta[0] == 0.5);
        CHECK(abar[0] == 0.5);
    }
    {
        const auto [beta, abar] = make_schedule(2, 0.1, 0.2);
        CHECK(beta[0] == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(beta[1] == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(abar[0] == doctest::Approx(0.9).epsilon(1e-15));
        CHECK(abar[1] == doctest::Approx(0.72).epsilon(1e-15));
    }
    CHECK_THROWS_AS(make_schedule(0, 0.1, 0.2), std::domain_error);
    CHECK_THROWS_AS(make_schedule(10, 0.0, 0.2), std::domain_error);
    CHECK_THROWS_AS(make_schedule(10, 0.3, 0.2), std::domain_error);
}

TEST_CASE("alpha_bar matches an extended-precision product") {
    const auto [beta, abar] = make_schedule(1000, 1e-4, 0.02);
    const auto oracle = oracles::alpha_bar_longdouble(1000, 1e-4, 0.02);
    for (int t : {0, 250, 500, 999}) {
        const long double rel =
            std::abs((static_cast<long double>(abar[t]) - oracle[static_cast<std::size_t>(t)]) /
                     oracle[static_cast<std::size_t>(t)]);
        CHECK(static_cast<double>(rel) < 1e-12);
    }
}

TEST_CASE("subsample_steps endpoints and spacing") {
    {
        const auto steps = subsample_steps(7, 7);
        for (int i = 0; i < 7; ++i)
            CHECK(steps[static_cast<std::size_t>(i)] == i + 1);
    }
    {
        const auto steps = subsample_steps(1000, 1);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0] == 1000);
    }
    {
        const auto steps = subsample_steps(1000, 30);
        REQUIRE(steps.size() == 30);
        CHECK(steps.front() >= 1);
        CHECK(steps.back() == 1000);
        for (std::size_t i = 1; i < steps.size(); ++i) {
            CHECK(steps[i] > steps[i - 1]);
            const int gap = steps[i] - steps[i - 1];
            CHECK(std::abs(gap - 1000 / 30) <= 2); // floor or ceil of T/K, +-1
        }
    }
    CHECK_THROWS_AS(subsample_steps(10, 11), std::domain_error);
}

TEST_CASE("schedule invariants hold to 1e-12") {
    const DiffusionSchedule s = make_diffusion_schedule(1000, 1e-4, 0.02, 30, 1e-4, 0.01);
    for (int t = 1; t < s.T; ++t)
        CHECK(s.alpha_bar[t] < s.alpha_bar[t - 1]);
    for (int k = 0; k < s.K(); ++k) {
        const double ab = s.alpha_bar_at(k);
        CHECK(std::abs(s.sigma2[k] - (1.0 - ab) / ab) <= 1e-12 * s.sigma2[k]);
        CHECK(std::abs(s.mu[k] - 1e-4 / s.sigma2[k]) <= 1e-12 * s.mu[k]);
        CHECK(std::abs(s.gamma[k] - 0.01 * s.mu[k]) <= 1e-12 * s.gamma[k]);
    }
    // sigma2 increases with t_k; mu increases as k decreases
    for (int k = 1; k < s.K(); ++k) {
        CHECK(s.sigma2[k] > s.sigma2[k - 1]);
        CHECK(s.mu[k] < s.mu[k - 1]);
    }
}

TEST_CASE("substituting the denoised image into the reinjection recovers the estimator noise") {
    // eps_hat = (x_t - sqrt(abar) x_tilde) / sqrt(1 - abar) with
    // x_tilde = (x_t - sqrt(1-abar) eps) / sqrt(abar) gives back eps.
    std::mt19937_64 rng(5);
    const Tsmi x_t = draw_complex_gaussian(rng, 8, 8, 3);
    NoiseEstimatorSpec spec;
    spec.kind = EstimatorKind::Smoother;
    spec.smoother_sigma_px = 1.0;
    const double abar = 0.55;
    const Tsmi eps = estimate_noise(spec, x_t, abar);
    Tsmi x_tilde = x_t;
    x_tilde.data = (x_t.data - std::sqrt(1.0 - abar) * eps.data) / std::sqrt(abar);
    Tsmi eps_back = x_t;
    eps_back.data = (x_t.data - std::sqrt(abar) * x_tilde.data) / std::sqrt(1.0 - abar);
    CHECK((eps_back.data - eps.data).norm() <= 1e-12 * eps.data.norm());
}

TEST_CASE("k = 1 run equals a hand-unrolled single step") {
    const DeskSetup d = small_setup();
    const DiffusionSchedule sched = make_diffusion_schedule(1000, 1e-4, 0.02, 1, 1e-4, 0.01);
    SamplerParams params = oracle_params(1, 99);

    NoiseEstimatorSpec est;
    est.kind = EstimatorKind::Oracle;
    est.oracle_x0 = d.x_ref;

    const SampleResult got = mrf_diph_sample(d.y, d.model, d.dict, est, sched, params);

    // hand-unrolled: same draws, same public ops
    std::mt19937_64 rng(params.seed);
    const Tsmi x_K = draw_complex_gaussian(rng, 32, 32, 4);
    const double ab = sched.alpha_bar_at(0);
    const Tsmi eps = estimate_noise(est, x_K, ab);
    Tsmi x_tilde = x_K;
    x_tilde.data = (x_K.data - std::sqrt(1.0 - ab) * eps.data) / std::sqrt(ab);
    const double mu = sched.mu[0], gamma = sched.gamma[0];
    Tsmi anchor = x_tilde;
    anchor.data = (mu * x_tilde.data + gamma * Tsmi::zeros(32, 32, 4).data -
                   Tsmi::zeros(32, 32, 4).data) /
                  (mu + gamma);
    ProxParams pp = params.prox;
    pp.weight = mu + gamma;
    const Tsmi x_hat = prox_f(d.model, d.y, anchor, pp);
    Tsmi arg = x_hat;
    arg.data = x_hat.data + Tsmi::zeros(32, 32, 4).data / gamma;
    const MatchResult m = dict_match(arg, d.dict);

    CHECK(std::memcmp(got.x_rec.data.data(), m.projected.data.data(),
                      sizeof(cplx) * static_cast<std::size_t>(m.projected.data.size())) == 0);
    CHECK((got.q_rec.t1_ms - m.t1_map).norm() == 0.0);
}

TEST_CASE("oracle estimator with consistent data recovers the phantom exactly") {
    const DeskSetup d = small_setup();
    const DiffusionSchedule sched = make_diffusion_schedule(1000, 1e-4, 0.02, 10, 1e-4, 0.01);
    SamplerParams params = oracle_params(10);

    NoiseEstimatorSpec est;
    est.kind = EstimatorKind::Oracle;
    est.oracle_x0 = d.x_ref;

    const SampleResult res = mrf_diph_sample(d.y, d.model, d.dict, est, sched, params, &d.x_ref);

    for (int p = 0; p < d.qmaps.pixels(); ++p) {
        if (!d.qmaps.mask[static_cast<std::size_t>(p)])
            continue;
        REQUIRE(res.q_rec.t1_ms[p] == d.qmaps.t1_ms[p]);
        REQUIRE(res.q_rec.t2_ms[p] == d.qmaps.t2_ms[p]);
    }
    CHECK(nrmse(res.x_rec, d.x_ref, true) < 0.5);

    // physics residual is non-increasing over the last half of the steps
    const auto& tr = res.trace;
    for (std::size_t i = tr.size() / 2 + 1; i < tr.size(); ++i)
        CHECK(tr[i].kspace_nrmse <= tr[i - 1].kspace_nrmse + 1e-6 * 100.0);
}

TEST_CASE("fixed seed runs are bit-identical across thread counts") {
    const DeskSetup d = small_setup();
    const DiffusionSchedule sched = make_diffusion_schedule(1000, 1e-4, 0.02, 5, 1e-4, 0.01);
    SamplerParams params = oracle_params(5, 1234);
    NoiseEstimatorSpec est;
    est.kind = EstimatorKind::Smoother;
    est.smoother_sigma_px = 1.0;
    est.conditioned = true;
    est.condition = adjoint(d.model, d.y);

    set_num_threads(1);
    const SampleResult a = mrf_diph_sample(d.y, d.model, d.dict, est, sched, params);
    const SampleResult a2 = mrf_diph_sample(d.y, d.model, d.dict, est, sched, params);
    set_num_threads(4);
    const SampleResult b = mrf_diph_sample(d.y, d.model, d.dict, est, sched, params);
    set_num_threads(1);

    CHECK(std::memcmp(a.x_rec.data.data(), a2.x_rec.data.data(),
                      sizeof(cplx) * static_cast<std::size_t>(a.x_rec.data.size())) == 0);
    CHECK(std::memcmp(a.x_rec.data.data(), b.x_rec.data.data(),
                      sizeof(cplx) * static_cast<std::size_t>(a.x_rec.data.size())) == 0);
    CHECK((a.q_rec.t1_ms - b.q_rec.t1_ms).norm() == 0.0);
}

TEST_CASE("ddm_only with a Bloch-consistent oracle returns that image") {
    const DeskSetup d = small_setup();
    const DiffusionSchedule sched = make_diffusion_schedule(1000, 1e-4, 0.02, 6, 1e-4, 0.01);
    SamplerParams params = oracle_params(6);
    params.mode = SamplerMode::DdmOnly;

    NoiseEstimatorSpec est;
    est.kind = EstimatorKind::Oracle;
    est.oracle_x0 = d.x_ref; // already a dictionary projection of itself

    const SampleResult res = mrf_diph_sample(d.y, d.model, d.dict, est, sched, params);
    CHECK((res.x_rec.data - d.x_ref.data).norm() <= 1e-9 * d.x_ref.data.norm());

    // q comes from one final match of the returned image
    const MatchResult m = dict_match(res.x_rec, d.dict);
    CHECK((res.q_rec.t1_ms - m.t1_map).norm() == 0.0);
    CHECK((res.q_rec.rho - m.rho_map).norm() == 0.0);
}

TEST_CASE("kspace_only mode defers the match and keeps the dual at zero") {
    const DeskSetup d = small_setup();
    const DiffusionSchedule sched = make_diffusion_schedule(1000, 1e-4, 0.02, 4, 1e-4, 0.01);
    SamplerParams params = oracle_params(4);
    params.mode = SamplerMode::KSpaceOnly;
    NoiseEstimatorSpec est;
    est.kind = EstimatorKind::Oracle;
    est.oracle_x0 = d.x_ref;
    const SampleResult res = mrf_diph_sample(d.y, d.model, d.dict, est, sched, params);
    CHECK(all_finite(res.x_rec));
    const MatchResult m = dict_match(res.x_rec, d.dict);
    CHECK((res.q_rec.t2_ms - m.t2_map).norm() == 0.0);
}

TEST_CASE("noise mixing keeps unit variance for any xi") {
    std::mt19937_64 rng(2024);
    const int n = 64 * 64 * 4;
    for (double xi : {0.0, 0.5, 1.0}) {
        const Tsmi eps = draw_complex_gaussian(rng, 64, 64, 4);
        const Tsmi eps_hat = draw_complex_gaussian(rng, 64, 64, 4); // unit-variance stand-in
        Eigen::MatrixXcd mixed =
            std::sqrt(xi) * eps.data + std::sqrt(1.0 - xi) * eps_hat.data;
        const double mean_sq = mixed.squaredNorm() / n;
        CHECK(std::abs(mean_sq - 1.0) <= 3.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("sampler validates its inputs") {
    const DeskSetup d = small_setup();
    const DiffusionSchedule sched = make_diffusion_schedule(100, 1e-4, 0.02, 4, 1e-4, 0.01);
    NoiseEstimatorSpec est;
    est.kind = EstimatorKind::Zero;

    SamplerParams bad_k = oracle_params(5);
    CHECK_THROWS_AS(mrf_diph_sample(d.y, d.model, d.dict, est, sched, bad_k), std::domain_error);

    SamplerParams bad_xi = oracle_params(4);
    bad_xi.xi = 1.5;
    CHECK_THROWS_AS(mrf_diph_sample(d.y, d.model, d.dict, est, sched, bad_xi), std::domain_error);
}

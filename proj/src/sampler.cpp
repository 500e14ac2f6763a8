// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/sampler.hpp"

#include "mrfdiph/metrics.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace mrf {

std::pair<Eigen::VectorXd, Eigen::VectorXd> make_schedule(int T, double beta0, double betaT) {
    if (T < 1)
        throw std::domain_error("make_schedule: T must be >= 1");
    if (!(beta0 > 0.0 && beta0 <= betaT && betaT < 1.0))
        throw std::domain_error("make_schedule: requires 0 < beta0 <= betaT < 1");

    Eigen::VectorXd beta(T);
    if (T == 1)
        beta[0] = beta0;
    else
        for (int t = 0; t < T; ++t)
            beta[t] = beta0 + (betaT - beta0) * static_cast<double>(t) / (T - 1);

    Eigen::VectorXd alpha_bar(T);
    double prod = 1.0;
    for (int t = 0; t < T; ++t) {
        prod *= 1.0 - beta[t];
        alpha_bar[t] = prod;
    }
    return {beta, alpha_bar};
}

std::vector<int> subsample_steps(int T, int K) {
    if (K < 1 || K > T)
        throw std::domain_error("subsample_steps: requires 1 <= K <= T");
    std::vector<int> steps(static_cast<std::size_t>(K));
    if (K == 1) {
        steps[0] = T;
        return steps;
    }
    for (int i = 0; i < K; ++i)
        steps[static_cast<std::size_t>(i)] =
            static_cast<int>(std::llround(1.0 + static_cast<double>(T - 1) * i / (K - 1)));
    return steps;
}

DiffusionSchedule make_diffusion_schedule(int T, double beta0, double betaT, int K, double lambda,
                                          double tau) {
    if (!(lambda > 0.0) || !(tau > 0.0))
        throw std::domain_error("make_diffusion_schedule: lambda and tau must be positive");
    DiffusionSchedule s;
    s.T = T;
    std::tie(s.beta, s.alpha_bar) = make_schedule(T, beta0, betaT);
    s.steps = subsample_steps(T, K);
    s.sigma2.resize(K);
    s.mu.resize(K);
    s.gamma.resize(K);
    for (int k = 0; k < K; ++k) {
        const double ab = s.alpha_bar_at(k);
        s.sigma2[k] = (1.0 - ab) / ab;
        s.mu[k] = lambda / s.sigma2[k];
        s.gamma[k] = tau * s.mu[k];
    }
    return s;
}

Tsmi draw_complex_gaussian(std::mt19937_64& rng, int h, int w, int channels) {
    Tsmi x = Tsmi::zeros(h, w, channels);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    cplx* ptr = x.data.data(); // column-major = channel-major
    const Eigen::Index n = x.data.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        ptr[i] = cplx(re, im);
    }
    return x;
}

SampleResult mrf_diph_sample(const KSpace& y, const AcquisitionModel& model,
                             const Dictionary& dict, const NoiseEstimatorSpec& estimator,
                             const DiffusionSchedule& sched, const SamplerParams& params,
                             const Tsmi* ground_truth) {
    const int K = sched.K();
    if (K < 1)
        throw std::domain_error("mrf_diph_sample: empty schedule");
    if (params.K != K)
        throw std::domain_error("mrf_diph_sample: params.K disagrees with the schedule");
    if (!(params.xi >= 0.0 && params.xi <= 1.0))
        throw std::domain_error("mrf_diph_sample: xi must lie in [0, 1]");
    if (dict.subspace() != model.subspace())
        throw std::domain_error("mrf_diph_sample: dictionary and model subspaces disagree");
    for (int k = 0; k < K; ++k)
        if (!(sched.gamma[k] > 0.0))
            throw std::domain_error("mrf_diph_sample: gamma must be positive at every step");

    const int h = model.h();
    const int w = model.w();
    const int s = model.subspace();

    std::mt19937_64 rng(params.seed);
    Tsmi x = draw_complex_gaussian(rng, h, w, s); // x_K
    Tsmi z = Tsmi::zeros(h, w, s);
    Tsmi v = Tsmi::zeros(h, w, s);
    Tsmi prox_prev;
    bool have_prox_prev = false;
    MatchResult match;

    SampleResult res;
    res.trace.reserve(static_cast<std::size_t>(K));

    for (int ik = K - 1; ik >= 0; --ik) {
        const double abar = sched.alpha_bar_at(ik);
        const double sa = std::sqrt(abar);
        const double sn = std::sqrt(1.0 - abar);
        const double mu = sched.mu[ik];
        const double gamma = sched.gamma[ik];

        // denoised estimate of the clean image
        const Tsmi eps_est = estimate_noise(estimator, x, abar);
        Tsmi x_tilde = x;
        x_tilde.data = (x.data - sn * eps_est.data) / sa;

        // k-space consistent image
        Tsmi x_hat;
        if (params.mode == SamplerMode::DdmOnly) {
            x_hat = x_tilde;
        } else {
            Tsmi anchor = x_tilde;
            anchor.data = (mu * x_tilde.data + gamma * z.data - v.data) / (mu + gamma);
            ProxParams pp = params.prox;
            pp.weight = mu + gamma;
            pp.warm_start = have_prox_prev ? &prox_prev : nullptr;
            x_hat = prox_f(model, y, anchor, pp);
            prox_prev = x_hat;
            have_prox_prev = true;
        }

        // Bloch-consistent image and qmaps, then the dual update
        Tsmi z_next;
        if (params.mode == SamplerMode::Base) {
            Tsmi arg = x_hat;
            arg.data = x_hat.data + v.data / gamma;
            match = dict_match(arg, dict);
            z_next = match.projected;
            v.data += gamma * (x_hat.data - z_next.data);
        } else {
            z_next = x_hat;
        }

        // deterministic noise predicted from the chosen clean estimate
        const Tsmi& noise_src =
            params.noise_source == NoiseSource::BlochConsistent ? z_next : x_hat;
        Tsmi eps_hat = x;
        eps_hat.data = (x.data - sa * noise_src.data) / sn;

        // renoise at the next level; abar_0 := 1 makes the last step exact
        const Tsmi eps = draw_complex_gaussian(rng, h, w, s);
        const double abar_prev = ik > 0 ? sched.alpha_bar_at(ik - 1) : 1.0;
        x.data = std::sqrt(abar_prev) * z_next.data +
                 std::sqrt(1.0 - abar_prev) *
                     (std::sqrt(params.xi) * eps.data + std::sqrt(1.0 - params.xi) * eps_hat.data);
        z = z_next;

        if (!all_finite(x) || !all_finite(z) || !all_finite(v))
            throw numeric_error("mrf_diph_sample: non-finite state at step k=" +
                                std::to_string(ik + 1));

        StepTrace st;
        st.step = ik + 1;
        st.sigma2 = sched.sigma2[ik];
        st.mu = mu;
        st.gamma = gamma;
        st.kspace_nrmse = kspace_nrmse(y, model, z);
        if (ground_truth != nullptr)
            st.tsmi_nrmse = nrmse(z, *ground_truth, true);
        res.trace.push_back(st);
    }

    if (params.mode != SamplerMode::Base)
        match = dict_match(z, dict);

    res.x_rec = z;
    res.q_rec.h = h;
    res.q_rec.w = w;
    res.q_rec.t1_ms = match.t1_map;
    res.q_rec.t2_ms = match.t2_map;
    res.q_rec.rho = match.rho_map;
    res.q_rec.mask.assign(static_cast<std::size_t>(h) * w, 1);
    return res;
}

void write_trace_csv(const std::string& path, const std::vector<StepTrace>& trace) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open trace file for writing: " + path);
    out << "step,sigma2,mu,gamma,kspace_nrmse,tsmi_nrmse\n";
    out.precision(12);
    for (const auto& st : trace) {
        out << st.step << ',' << st.sigma2 << ',' << st.mu << ',' << st.gamma << ','
            << st.kspace_nrmse << ',';
        if (st.tsmi_nrmse.has_value())
            out << *st.tsmi_nrmse;
        out << '\n';
    }
}

} // namespace mrf

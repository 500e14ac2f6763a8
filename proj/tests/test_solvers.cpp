// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/solvers.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace mrf;

namespace {

Tsmi random_tsmi(int h, int w, int channels, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Tsmi x = Tsmi::zeros(h, w, channels);
    for (Eigen::Index i = 0; i < x.data.size(); ++i)
        x.data.data()[i] = cplx(g(rng), g(rng));
    return x;
}

AcquisitionModel tiny_model(int h, int w, int c, int l, int s, double R, unsigned seed) {
    return make_model(make_coils(c, h, w, seed),
                      make_masks(l, h, w, R, seed + 1, MaskScheme::VariableDensity),
                      oracles::random_orthonormal(l, s, seed + 2));
}

double prox_objective(const AcquisitionModel& m, const KSpace& y, const Tsmi& anchor,
                      double weight, const Tsmi& x) {
    const KSpace ax = forward(m, x);
    double obj = (y.data - ax.data).squaredNorm();
    obj += 0.5 * weight * (x.data - anchor.data).squaredNorm();
    return obj;
}

} // namespace

TEST_CASE("cg on the identity converges in one iteration") {
    const Tsmi rhs = random_tsmi(4, 4, 2, 1);
    ProxParams p;
    p.max_cg_iters = 5;
    p.cg_tol = 1e-12;
    const CgResult res = cg_solve([](const Tsmi& v) { return v; }, rhs, p);
    CHECK(res.iterations <= 1);
    CHECK((res.x.data - rhs.data).norm() < 1e-12 * rhs.data.norm());
}

TEST_CASE("cg with zero rhs returns zero") {
    ProxParams p;
    const CgResult res = cg_solve([](const Tsmi& v) { return v; }, Tsmi::zeros(3, 3, 2), p);
    CHECK(res.x.data.norm() == 0.0);
}

TEST_CASE("cg matches a dense SPD solve") {
    // random 16x16 SPD system embedded as an operator on a 4x4x1 series
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd a(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            a(i, j) = cplx(g(rng), g(rng));
    const Eigen::MatrixXcd spd =
        a.adjoint() * a + 0.5 * Eigen::MatrixXcd::Identity(16, 16);

    const auto op = [&](const Tsmi& v) {
        return oracles::unflatten(spd * oracles::flatten(v), 4, 4, 1);
    };
    const Tsmi rhs = random_tsmi(4, 4, 1, 9);

    ProxParams p;
    p.max_cg_iters = 16;
    p.cg_tol = 1e-14;
    const CgResult res = cg_solve(op, rhs, p);

    const Eigen::VectorXcd direct = spd.ldlt().solve(oracles::flatten(rhs));
    CHECK((oracles::flatten(res.x) - direct).norm() <= 1e-6 * direct.norm());
}

TEST_CASE("cg residual trace is non-increasing") {
    const AcquisitionModel m = tiny_model(8, 8, 2, 6, 3, 2.0, 5);
    const Tsmi rhs = random_tsmi(8, 8, 3, 2);
    const auto op = [&](const Tsmi& v) {
        Tsmi out = normal(m, v);
        out.data = 2.0 * out.data + 0.3 * v.data;
        return out;
    };
    ProxParams p;
    p.max_cg_iters = 25;
    p.cg_tol = 1e-14;
    const CgResult res = cg_solve(op, rhs, p);
    for (std::size_t i = 1; i < res.residual_trace.size(); ++i)
        CHECK(res.residual_trace[i] <= res.residual_trace[i - 1] + 1e-15);
}

TEST_CASE("cg warm start at the solution stays put") {
    const Tsmi rhs = random_tsmi(5, 5, 2, 8);
    ProxParams p;
    p.max_cg_iters = 5;
    p.cg_tol = 1e-10;
    p.warm_start = &rhs; // identity operator: solution = rhs
    const CgResult res = cg_solve([](const Tsmi& v) { return v; }, rhs, p);
    CHECK(res.iterations <= 1);
    CHECK((res.x.data - rhs.data).norm() <= 1e-10 * rhs.data.norm());
}

TEST_CASE("prox with a huge weight returns the anchor") {
    const AcquisitionModel m = tiny_model(8, 8, 2, 6, 3, 2.0, 13);
    const Tsmi w = random_tsmi(8, 8, 3, 4);
    const KSpace y = forward(m, random_tsmi(8, 8, 3, 5));
    ProxParams p;
    p.weight = 1e12;
    p.max_cg_iters = 5;
    p.cg_tol = 1e-6;
    const Tsmi out = prox_f(m, y, w, p);
    CHECK((out.data - w.data).norm() <= 1e-5 * w.data.norm());
}

TEST_CASE("prox scalar closed form on the identity model") {
    const CoilMaps coils = make_coils(1, 1, 1, 0);
    const FrameMasks masks = make_masks(1, 1, 1, 1.0, 0, MaskScheme::Uniform);
    const AcquisitionModel m = make_model(coils, masks, Eigen::MatrixXcd::Identity(1, 1));

    KSpace y = KSpace::zeros(1, 1, 1, 1);
    y.data(0, 0) = cplx(0.8, -0.2);
    Tsmi w = Tsmi::zeros(1, 1, 1);
    w.data(0, 0) = cplx(-0.5, 0.9);

    ProxParams p;
    p.weight = 3.7;
    p.max_cg_iters = 10;
    p.cg_tol = 1e-14;
    const Tsmi out = prox_f(m, y, w, p);
    const cplx expected = (2.0 * y.data(0, 0) + p.weight * w.data(0, 0)) / (2.0 + p.weight);
    CHECK(std::abs(out.data(0, 0) - expected) < 1e-8);
}

TEST_CASE("prox matches a dense normal-equation oracle") {
    const int h = 6, w = 6, c = 2, l = 5, s = 3;
    const AcquisitionModel m = tiny_model(h, w, c, l, s, 2.0, 31);
    const KSpace y = forward(m, random_tsmi(h, w, s, 11));
    const Tsmi anchor = random_tsmi(h, w, s, 12);
    const double weight = 0.7;

    ProxParams p;
    p.weight = weight;
    p.max_cg_iters = 50;
    p.cg_tol = 1e-10;
    const Tsmi out = prox_f(m, y, anchor, p);

    // dense (2 A^H A + weight I) x = 2 A^H y + weight w
    const auto normal_op = [&](const Tsmi& v) { return normal(m, v); };
    const Eigen::MatrixXcd gram = oracles::materialize(normal_op, h, w, s);
    const int n = h * w * s;
    const Eigen::MatrixXcd lhs = 2.0 * gram + weight * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::VectorXcd rhs =
        2.0 * oracles::flatten(adjoint(m, y)) + weight * oracles::flatten(anchor);
    const Eigen::VectorXcd direct = lhs.ldlt().solve(rhs);
    CHECK((oracles::flatten(out) - direct).norm() <= 1e-6 * direct.norm());
}

TEST_CASE("prox objective never exceeds its value at the anchor") {
    const AcquisitionModel m = tiny_model(8, 8, 2, 6, 3, 2.5, 41);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const Tsmi xr = random_tsmi(8, 8, 3, static_cast<unsigned>(rng()));
        const KSpace y = forward(m, xr);
        const Tsmi anchor = random_tsmi(8, 8, 3, static_cast<unsigned>(rng()));
        ProxParams p;
        p.weight = std::exp(std::uniform_real_distribution<double>(-4.0, 4.0)(rng));
        p.max_cg_iters = 5;
        p.cg_tol = 1e-6;
        const Tsmi out = prox_f(m, y, anchor, p);
        CHECK(prox_objective(m, y, anchor, p.weight, out) <=
              prox_objective(m, y, anchor, p.weight, anchor) * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("prox objective cannot exceed the anchor value even with a bad warm start") {
    const AcquisitionModel m = tiny_model(8, 8, 2, 6, 3, 2.5, 47);
    const KSpace y = forward(m, random_tsmi(8, 8, 3, 1));
    const Tsmi anchor = random_tsmi(8, 8, 3, 2);
    Tsmi awful = random_tsmi(8, 8, 3, 3);
    awful.data *= 50.0;
    ProxParams p;
    p.weight = 1.3;
    p.max_cg_iters = 1;
    p.cg_tol = 1e-12;
    p.warm_start = &awful;
    const Tsmi out = prox_f(m, y, anchor, p);
    CHECK(prox_objective(m, y, anchor, p.weight, out) <=
          prox_objective(m, y, anchor, p.weight, anchor) * (1.0 + 1e-12));
}

TEST_CASE("prox rejects a non-positive weight") {
    const AcquisitionModel m = tiny_model(8, 8, 1, 4, 2, 2.0, 3);
    const KSpace y = KSpace::zeros(8, 8, 1, 4);
    ProxParams p;
    p.weight = 0.0;
    CHECK_THROWS_AS(prox_f(m, y, Tsmi::zeros(8, 8, 2), p), std::domain_error);
}

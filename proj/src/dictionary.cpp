// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#include "mrfdiph/dictionary.hpp"

#include "mrfdiph/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace mrf {

namespace {

std::vector<double> make_axis(const GridRange& r, GridSpacing spacing, const char* name) {
    if (!(r.lo > 0.0) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
        throw std::domain_error(std::string("build_grid: ") + name + " range must be positive");
    if (r.count < 1)
        throw std::domain_error(std::string("build_grid: ") + name + " count must be >= 1");
    if (r.count > 1 && !(r.hi > r.lo))
        throw std::domain_error(std::string("build_grid: ") + name + " needs hi > lo");

    std::vector<double> axis(static_cast<std::size_t>(r.count));
    if (r.count == 1) {
        axis[0] = r.lo;
        return axis;
    }
    for (int i = 0; i < r.count; ++i) {
        const double f = static_cast<double>(i) / (r.count - 1);
        if (spacing == GridSpacing::Linear)
            axis[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * f;
        else
            axis[static_cast<std::size_t>(i)] = std::exp(std::log(r.lo) + (std::log(r.hi) - std::log(r.lo)) * f);
    }
    return axis;
}

} // namespace

Lut build_grid(const GridRange& t1, const GridRange& t2, GridSpacing spacing) {
    const auto t1_axis = make_axis(t1, spacing, "t1");
    const auto t2_axis = make_axis(t2, spacing, "t2");

    Lut lut;
    lut.entries.reserve(t1_axis.size() * t2_axis.size());
    for (double a : t1_axis)
        for (double b : t2_axis)
            if (b <= a)
                lut.entries.push_back({a, b});
    if (lut.entries.empty())
        throw std::domain_error("build_grid: no (t1, t2) pair satisfies t2 <= t1");
    return lut;
}

Dictionary build_dictionary(const Lut& lut, const SequenceParams& seq, int s) {
    seq.validate();
    const int d = lut.size();
    const int l = seq.length();
    if (d < 1)
        throw std::domain_error("build_dictionary: empty LUT");
    if (s < 1 || s > std::min(d, l))
        throw std::domain_error("build_dictionary: requires 1 <= s <= min(d, l)");

    Dictionary dict;
    dict.lut = lut;
    dict.atoms_full.resize(d, l);
    parallel_for(d, [&](std::int64_t j) {
        const auto& e = lut.entries[static_cast<std::size_t>(j)];
        dict.atoms_full.row(j) = epg_fisp(e.t1_ms, e.t2_ms, seq).transpose();
    });

    // Right singular vectors via the l x l Gram matrix; scales to large d
    // without forming a d x l factorization.
    const Eigen::MatrixXcd gram = dict.atoms_full.adjoint() * dict.atoms_full;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success)
        throw numeric_error("build_dictionary: eigendecomposition of the Gram matrix failed");

    // Eigenvalues come back ascending; keep the top s in descending order.
    dict.basis = es.eigenvectors().rightCols(s).rowwise().reverse();
    dict.atoms_compressed = dict.atoms_full * dict.basis;
    dict.atom_norms = dict.atoms_compressed.rowwise().norm();
    for (int j = 0; j < d; ++j)
        if (!(dict.atom_norms[j] > 0.0))
            throw numeric_error("build_dictionary: zero-norm atom in compressed dictionary");
    return dict;
}

Tsmi compress(const Tsmi& x, const Eigen::MatrixXcd& basis) {
    if (x.data.cols() != basis.rows())
        throw std::domain_error("compress: channel count does not match basis rows");
    return Tsmi(x.h, x.w, x.data * basis);
}

Tsmi decompress(const Tsmi& x, const Eigen::MatrixXcd& basis) {
    if (x.data.cols() != basis.cols())
        throw std::domain_error("decompress: channel count does not match basis columns");
    return Tsmi(x.h, x.w, x.data * basis.adjoint());
}

MatchResult dict_match(const Tsmi& x, const Dictionary& dict) {
    if (x.channels() != dict.subspace())
        throw std::domain_error("dict_match: input channel count must equal the subspace size");
    const int hw = x.pixels();
    const int d = dict.size();

    MatchResult res;
    res.t1_map.resize(hw);
    res.t2_map.resize(hw);
    res.rho_map.resize(hw);
    res.atom_index.resize(hw);
    res.projected = Tsmi::zeros(x.h, x.w, dict.subspace());

    const Eigen::VectorXd inv_norm2 = dict.atom_norms.array().square().inverse();

    // Fixed-size voxel blocks keep the per-voxel arithmetic identical for
    // any thread count; threads only pick up whole blocks.
    constexpr int kBlock = 256;
    const std::int64_t nblocks = (hw + kBlock - 1) / kBlock;
    parallel_for(nblocks, [&](std::int64_t b) {
        const int row0 = static_cast<int>(b) * kBlock;
        const int nrows = std::min(kBlock, hw - row0);
        // inner(v, j) = <D_j, x_v> = sum_i conj(D_{j,i}) x_{v,i}
        const Eigen::MatrixXcd inner =
            x.data.middleRows(row0, nrows) * dict.atoms_compressed.adjoint();
        for (int r = 0; r < nrows; ++r) {
            int best = 0;
            double best_score = std::norm(inner(r, 0)) * inv_norm2[0];
            for (int j = 1; j < d; ++j) {
                const double score = std::norm(inner(r, j)) * inv_norm2[j];
                if (score > best_score) {
                    best_score = score;
                    best = j;
                }
            }
            const int v = row0 + r;
            const cplx rho = inner(r, best) * inv_norm2[best];
            res.atom_index[v] = best;
            res.t1_map[v] = dict.lut.entries[static_cast<std::size_t>(best)].t1_ms;
            res.t2_map[v] = dict.lut.entries[static_cast<std::size_t>(best)].t2_ms;
            res.rho_map[v] = rho;
            res.projected.data.row(v) = rho * dict.atoms_compressed.row(best);
        }
    });
    return res;
}

} // namespace mrf

// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mrfdiph/epg.hpp"
#include "mrfdiph/tsmi.hpp"

#include <Eigen/Dense>

#include <vector>

namespace mrf {

struct LutEntry {
    double t1_ms = 0.0;
    double t2_ms = 0.0;
};

/// Lookup table of (T1, T2) pairs, t1-major then t2, all satisfying
/// 0 < t2 <= t1, no duplicates.
struct Lut {
    std::vector<LutEntry> entries;
    int size() const { return static_cast<int>(entries.size()); }
};

struct GridRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

enum class GridSpacing { Linear, Log };

/// Cartesian product of the two 1-D grids with pairs violating t2 <= t1
/// removed. Throws std::domain_error when the filtered grid is empty.
Lut build_grid(const GridRange& t1, const GridRange& t2, GridSpacing spacing);

/// Simulated atom matrix plus its rank-s temporal subspace.
struct Dictionary {
    Lut lut;
    Eigen::MatrixXcd atoms_full;       ///< d x l
    Eigen::MatrixXcd basis;            ///< l x s, orthonormal columns
    Eigen::MatrixXcd atoms_compressed; ///< d x s = atoms_full * basis
    Eigen::VectorXd atom_norms;        ///< Euclidean norm of each compressed atom

    int size() const { return static_cast<int>(atoms_full.rows()); }
    int frames() const { return static_cast<int>(atoms_full.cols()); }
    int subspace() const { return static_cast<int>(basis.cols()); }
};

/// Simulates one atom per LUT entry and extracts the top-s right singular
/// vectors of the atom matrix as the temporal basis.
Dictionary build_dictionary(const Lut& lut, const SequenceParams& seq, int s);

/// x (hw x l) -> x * basis (hw x s).
Tsmi compress(const Tsmi& x, const Eigen::MatrixXcd& basis);

/// x (hw x s) -> x * basis^H (hw x l). compress and decompress are mutual
/// adjoints; decompress(compress(.)) is the orthogonal projection onto the
/// basis span.
Tsmi decompress(const Tsmi& x, const Eigen::MatrixXcd& basis);

struct MatchResult {
    Eigen::VectorXd t1_map;      ///< per pixel, ms
    Eigen::VectorXd t2_map;      ///< per pixel, ms
    Eigen::VectorXcd rho_map;    ///< per pixel, complex scale
    Eigen::VectorXi atom_index;  ///< per pixel, matched LUT row
    Tsmi projected;              ///< rho * matched atom, compressed channels
};

/// Per-voxel exhaustive search for the best-fitting scaled atom:
/// j* = argmax_j |<x_v, D_j>| / ||D_j||, rho = <D_j*, x_v> / ||D_j*||^2.
/// Ties break to the lowest atom index; all-zero voxels match atom 0 with
/// rho = 0. Results are independent of the worker thread count.
MatchResult dict_match(const Tsmi& x, const Dictionary& dict);

} // namespace mrf

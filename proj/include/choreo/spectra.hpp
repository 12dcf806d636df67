#pragma once

#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "choreo/basis.hpp"
#include "choreo/elements.hpp"
#include "choreo/oracle.hpp"

namespace choreo {

inline double scale_invariant(double lambda, double T) {
    if (T <= 0.0) throw std::invalid_argument("scale_invariant: T must be positive");
    return lambda * T * T / (4.0 * std::numbers::pi * std::numbers::pi);
}

namespace lapack {

// Dense symmetric eigendecomposition (divide and conquer), ascending order.
inline void syevd(Eigen::MatrixXd& a, Eigen::VectorXd& w) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    w.resize(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
}

inline Eigen::VectorXd eigenvalues_only(Eigen::MatrixXd a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::VectorXd w(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
    return w;
}

// Generalized A v = lambda B v with B positive definite.
inline Eigen::VectorXd generalized_eigenvalues(Eigen::MatrixXd a, Eigen::MatrixXd b) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::VectorXd w(n);
    const lapack_int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'N', 'L', n, a.data(), n,
                                           b.data(), n, w.data());
    if (info != 0) throw std::runtime_error("dsygvd failed, info=" + std::to_string(info));
    return w;
}

}  // namespace lapack

// Eigendecomposition of one symmetry block, in scale-invariant units.
struct SpectralResult {
    Subspace label;
    int N = 0;
    Eigen::VectorXd lambda_tilde;  // ascending
    Eigen::MatrixXd vectors;       // columns match lambda_tilde, block ordering
    std::vector<int> zero_modes;   // indices with |lambda_tilde| < zero_tol
    std::optional<Subspace> degeneracy_partner;
};

inline Subspace degeneracy_partner_of(Subspace s) {
    switch (s) {
        case Subspace::ZCplus: return Subspace::ZSplus;
        case Subspace::ZSplus: return Subspace::ZCplus;
        case Subspace::ZCminus: return Subspace::ZSminus;
        case Subspace::ZSminus: return Subspace::ZCminus;
        default: throw std::invalid_argument("no degeneracy partner");
    }
}

inline SpectralResult eigensolve(const SubspaceBlock& block, double T, double zero_tol = 1e-6) {
    const Eigen::MatrixXd& m = block.matrix;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("eigensolve: block is not symmetric");

    SpectralResult res;
    res.label = block.label;
    res.N = block.N;
    Eigen::MatrixXd vecs = m;
    Eigen::VectorXd w;
    lapack::syevd(vecs, w);
    const double nu2 = std::pow(2.0 * std::numbers::pi / T, 2);
    res.lambda_tilde = w / nu2;
    res.vectors = vecs;
    // deterministic sign: largest-magnitude component positive
    for (int j = 0; j < res.vectors.cols(); ++j) {
        int imax = 0;
        res.vectors.col(j).cwiseAbs().maxCoeff(&imax);
        if (res.vectors(imax, j) < 0.0) res.vectors.col(j) *= -1.0;
    }
    for (int j = 0; j < res.lambda_tilde.size(); ++j)
        if (std::abs(res.lambda_tilde(j)) < zero_tol) res.zero_modes.push_back(j);
    if (is_zero_choreographic(block.label))
        res.degeneracy_partner = degeneracy_partner_of(block.label);
    return res;
}

// Time-domain samples of the variation delta q for one eigenvector, as a
// 6 x S matrix (body-interleaved components). For zero-choreographic labels
// the degenerate partner (C - C^2) Psi / sqrt(3) is also returned.
struct Eigenfunction {
    SampleMatrix samples;
    std::optional<SampleMatrix> partner;
};

inline Eigenfunction reconstruct_eigenfunction(const SpectralResult& result,
                                               const IndexSequences& seqs, double T, int index,
                                               int S) {
    if (index < 0 || index >= result.lambda_tilde.size())
        throw std::out_of_range("reconstruct_eigenfunction: index out of range");
    if (S % 6 != 0)
        throw std::invalid_argument("reconstruct_eigenfunction: S must be a multiple of 6");
    const auto grid = uniform_grid(T, S);
    const Eigen::VectorXd a = result.vectors.col(index);
    SampleMatrix psi = SampleMatrix::Zero(6, S);
    const int count = is_choreographic(result.label) ? seqs.N : 2 * seqs.N;
    for (int n = 1; n <= count; ++n) {
        psi += a(2 * (n - 1)) * basis_eval(result.label, seqs, n, Coord::X, grid, T).samples;
        psi += a(2 * (n - 1) + 1) * basis_eval(result.label, seqs, n, Coord::Y, grid, T).samples;
    }
    Eigenfunction ef{psi, std::nullopt};
    if (is_zero_choreographic(result.label)) {
        const SampleMatrix c1 = apply_C(psi);
        ef.partner = (c1 - apply_C(c1)) / std::sqrt(3.0);
    }
    return ef;
}

// Summary of zero-mode and degeneracy structure across all blocks.
struct ClassifyReport {
    struct BlockInfo {
        Subspace label;
        int zero_modes = 0;
        int negative_modes = 0;
        double min_lambda_tilde = 0.0;
    };
    std::vector<BlockInfo> blocks;
    bool zero_mode_pattern_ok = false;  // exactly one in cc+, one in cs-, none elsewhere
    double max_zc_zs_mismatch = 0.0;    // spectra of zc/zs partners
};

inline ClassifyReport classify(const std::vector<SpectralResult>& results,
                               double zero_tol = 1e-6) {
    ClassifyReport rep;
    auto find = [&](Subspace s) -> const SpectralResult* {
        for (const auto& r : results)
            if (r.label == s) return &r;
        return nullptr;
    };
    bool ok = true;
    for (const auto& r : results) {
        ClassifyReport::BlockInfo info;
        info.label = r.label;
        info.min_lambda_tilde = r.lambda_tilde.size() ? r.lambda_tilde(0) : 0.0;
        for (int j = 0; j < r.lambda_tilde.size(); ++j) {
            if (std::abs(r.lambda_tilde(j)) < zero_tol) ++info.zero_modes;
            else if (r.lambda_tilde(j) < 0.0) ++info.negative_modes;
        }
        const int expected =
            (r.label == Subspace::CCplus || r.label == Subspace::CSminus) ? 1 : 0;
        if (info.zero_modes != expected) ok = false;
        rep.blocks.push_back(info);
    }
    rep.zero_mode_pattern_ok = ok;
    for (Subspace s : {Subspace::ZCplus, Subspace::ZCminus}) {
        const auto* zc = find(s);
        const auto* zs = find(degeneracy_partner_of(s));
        if (zc && zs)
            rep.max_zc_zs_mismatch = std::max(
                rep.max_zc_zs_mismatch,
                (zc->lambda_tilde - zs->lambda_tilde).cwiseAbs().maxCoeff());
    }
    return rep;
}

}  // namespace choreo

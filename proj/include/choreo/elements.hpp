#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "choreo/basis.hpp"
#include "choreo/sequences.hpp"
#include "choreo/useries.hpp"

namespace choreo {

// Closed-form 2x2 matrix elements of the potential part of the Hessian,
// built from the cosine tables u~(k).

// C(k^x, k^y, eps, m, n), m,n 1-based.
inline Eigen::Matrix2d element_C(const PairHessianSeries& ser, const std::vector<int>& kx,
                                 const std::vector<int>& ky, int eps, int m, int n) {
    if (m < 1 || n < 1 || m > static_cast<int>(kx.size()) || n > static_cast<int>(kx.size()))
        throw std::out_of_range("element_C: index out of range");
    const double sgn = ((m + n) % 2 == 0) ? 3.0 : -3.0;
    const int km_x = kx[m - 1], km_y = ky[m - 1];
    const int kn_x = kx[n - 1], kn_y = ky[n - 1];
    Eigen::Matrix2d e;
    e << ser.xx(km_x + eps * kn_x), -ser.xy(km_x + eps * kn_y),
        -ser.yx(km_y + eps * kn_x), ser.yy(km_y + eps * kn_y);
    return sgn * e;
}

// Z(l^x, l^y, m, n), m,n 1-based; sequences may carry the omitted trailing
// element, in which case indices up to 2N+1 are valid.
inline Eigen::Matrix2d element_Z(const PairHessianSeries& ser, const std::vector<int>& lx,
                                 const std::vector<int>& ly, int m, int n) {
    if (m < 1 || n < 1 || m > static_cast<int>(lx.size()) || n > static_cast<int>(lx.size()))
        throw std::out_of_range("element_Z: index out of range");
    const double sgn = (((m / 2) + (n / 2)) % 2 == 0) ? 3.0 : -3.0;
    const int sm = (m % 2 == 0) ? 1 : -1;
    const int sn = (n % 2 == 0) ? 1 : -1;
    Eigen::Matrix2d e;
    e << ser.xx(sm * lx[m - 1] - sn * lx[n - 1]), -ser.xy(sm * lx[m - 1] - sn * ly[n - 1]),
        -ser.yx(sm * ly[m - 1] - sn * lx[n - 1]), ser.yy(sm * ly[m - 1] - sn * ly[n - 1]);
    return sgn * e;
}

// One dense symmetric block of the Hessian. Rows are interleaved
// (n=1,x), (n=1,y), (n=2,x), ... ; dimension 2N for choreographic labels,
// 4N for zero-choreographic ones.
struct SubspaceBlock {
    Subspace label;
    int N = 0;
    Eigen::MatrixXd matrix;
};

namespace detail {

inline void add_kinetic(Eigen::MatrixXd& mat, const std::vector<int>& kx,
                        const std::vector<int>& ky, double nu) {
    for (int m = 0; m < static_cast<int>(kx.size()); ++m) {
        mat(2 * m, 2 * m) += (kx[m] * nu) * (kx[m] * nu);
        mat(2 * m + 1, 2 * m + 1) += (ky[m] * nu) * (ky[m] * nu);
    }
}

}  // namespace detail

inline SubspaceBlock assemble_block(Subspace label, const PairHessianSeries& ser,
                                    const IndexSequences& seqs, double T) {
    const int N = seqs.N;
    const double nu = 2.0 * std::numbers::pi / T;
    SubspaceBlock blk{label, N, {}};

    if (label == Subspace::Trivial) {
        // analytic: lambda = (k nu)^2, k = 0..3N, each quadruply degenerate
        blk.matrix = Eigen::MatrixXd::Zero(3 * N + 1, 3 * N + 1);
        for (int k = 0; k <= 3 * N; ++k) blk.matrix(k, k) = (k * nu) * (k * nu);
        return blk;
    }

    if (is_choreographic(label)) {
        const bool plus = is_plus_family(label);
        const std::vector<int>& kx = plus ? seqs.ko : seqs.ke;
        const std::vector<int>& ky = plus ? seqs.ke : seqs.ko;
        const double cs_sign = is_cos_family(label) ? -1.0 : 1.0;  // cc: C(-1)-C(+1), cs: C(-1)+C(+1)
        blk.matrix = Eigen::MatrixXd::Zero(2 * N, 2 * N);
        for (int m = 1; m <= N; ++m)
            for (int n = 1; n <= N; ++n)
                blk.matrix.block<2, 2>(2 * (m - 1), 2 * (n - 1)) =
                    element_C(ser, kx, ky, -1, m, n) + cs_sign * element_C(ser, kx, ky, 1, m, n);
        detail::add_kinetic(blk.matrix, kx, ky, nu);
        return blk;
    }

    // zero-choreographic; zs blocks equal their zc partners by construction
    const bool plus = is_plus_family(label);
    const std::vector<int>& lx = plus ? seqs.lo : seqs.le;
    const std::vector<int>& ly = plus ? seqs.le : seqs.lo;
    blk.matrix = Eigen::MatrixXd::Zero(4 * N, 4 * N);
    for (int m = 1; m <= 2 * N; ++m)
        for (int n = 1; n <= 2 * N; ++n)
            blk.matrix.block<2, 2>(2 * (m - 1), 2 * (n - 1)) = element_Z(ser, lx, ly, m, n);
    detail::add_kinetic(blk.matrix, lx, ly, nu);
    return blk;
}

// Zero-choreographic block including the truncated l^e endpoint mode
// (harmonic 3N), dimension 4N+1. The extra mode sits on the y coordinate for
// the + labels and on x for the - labels; used for the exact spectrum-union
// comparison against the full-basis oracle.
inline SubspaceBlock assemble_block_extended(Subspace label, const PairHessianSeries& ser,
                                             const IndexSequences& seqs, double T) {
    if (!is_zero_choreographic(label))
        throw std::invalid_argument("assemble_block_extended: zero-choreographic labels only");
    const int N = seqs.N;
    const double nu = 2.0 * std::numbers::pi / T;
    const bool plus = is_plus_family(label);
    std::vector<int> lx = plus ? seqs.lo : seqs.le;
    std::vector<int> ly = plus ? seqs.le : seqs.lo;
    // extend both sequences to index 2N+1; only the l^e column is physical
    lx.push_back(plus ? seq::l_odd(2 * N + 1) : seqs.le_omitted());
    ly.push_back(plus ? seqs.le_omitted() : seq::l_odd(2 * N + 1));
    const int extra_coord = plus ? 1 : 0;  // 0 = x, 1 = y of row 2N+1
    const int dim = 4 * N + 1;

    SubspaceBlock blk{label, N, Eigen::MatrixXd::Zero(dim, dim)};
    auto flat = [&](int m, int c) { return 2 * (m - 1) + c; };  // valid for m <= 2N
    // entry-wise so the unphysical coordinate of row 2N+1 is never evaluated
    // (its harmonic combinations would fall outside the cosine table)
    for (int m = 1; m <= 2 * N + 1; ++m)
        for (int n = 1; n <= 2 * N + 1; ++n) {
            const double sgn = (((m / 2) + (n / 2)) % 2 == 0) ? 3.0 : -3.0;
            const int sm = (m % 2 == 0) ? 1 : -1;
            const int sn = (n % 2 == 0) ? 1 : -1;
            for (int cm = 0; cm < 2; ++cm)
                for (int cn = 0; cn < 2; ++cn) {
                    if (m == 2 * N + 1 && cm != extra_coord) continue;
                    if (n == 2 * N + 1 && cn != extra_coord) continue;
                    const int km = (cm == 0) ? lx[m - 1] : ly[m - 1];
                    const int kn = (cn == 0) ? lx[n - 1] : ly[n - 1];
                    const int h = sm * km - sn * kn;
                    double v;
                    if (cm == 0 && cn == 0) v = ser.xx(h);
                    else if (cm == 0) v = -ser.xy(h);
                    else if (cn == 0) v = -ser.yx(h);
                    else v = ser.yy(h);
                    const int row = (m == 2 * N + 1) ? dim - 1 : flat(m, cm);
                    const int col = (n == 2 * N + 1) ? dim - 1 : flat(n, cn);
                    blk.matrix(row, col) = sgn * v;
                }
        }
    for (int m = 1; m <= 2 * N; ++m) {
        blk.matrix(flat(m, 0), flat(m, 0)) += (lx[m - 1] * nu) * (lx[m - 1] * nu);
        blk.matrix(flat(m, 1), flat(m, 1)) += (ly[m - 1] * nu) * (ly[m - 1] * nu);
    }
    const double w = seqs.le_omitted() * nu;
    blk.matrix(dim - 1, dim - 1) += w * w;
    return blk;
}

}  // namespace choreo

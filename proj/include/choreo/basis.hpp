#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "choreo/sequences.hpp"

namespace choreo {

// The eight non-trivial symmetry blocks plus the trivial subspace.
// c/z: choreographic / zero-choreographic, c/s: cos / sin (time reversal
// parity), +/-: eigenvalue of the half-period mirror operator.
enum class Subspace {
    Trivial,
    CCplus,
    CCminus,
    CSplus,
    CSminus,
    ZCplus,
    ZCminus,
    ZSplus,
    ZSminus
};

enum class Coord { X, Y };

inline bool is_choreographic(Subspace s) {
    return s == Subspace::CCplus || s == Subspace::CCminus || s == Subspace::CSplus ||
           s == Subspace::CSminus;
}

inline bool is_zero_choreographic(Subspace s) {
    return s == Subspace::ZCplus || s == Subspace::ZCminus || s == Subspace::ZSplus ||
           s == Subspace::ZSminus;
}

inline bool is_cos_family(Subspace s) {
    return s == Subspace::CCplus || s == Subspace::CCminus || s == Subspace::ZCplus ||
           s == Subspace::ZCminus;
}

inline bool is_plus_family(Subspace s) {
    return s == Subspace::CCplus || s == Subspace::CSplus || s == Subspace::ZCplus ||
           s == Subspace::ZSplus;
}

inline const char* subspace_name(Subspace s) {
    switch (s) {
        case Subspace::Trivial: return "trivial";
        case Subspace::CCplus: return "cc+";
        case Subspace::CCminus: return "cc-";
        case Subspace::CSplus: return "cs+";
        case Subspace::CSminus: return "cs-";
        case Subspace::ZCplus: return "zc+";
        case Subspace::ZCminus: return "zc-";
        case Subspace::ZSplus: return "zs+";
        case Subspace::ZSminus: return "zs-";
    }
    return "?";
}

inline Subspace subspace_from_name(const std::string& name) {
    for (Subspace s : {Subspace::Trivial, Subspace::CCplus, Subspace::CCminus, Subspace::CSplus,
                       Subspace::CSminus, Subspace::ZCplus, Subspace::ZCminus, Subspace::ZSplus,
                       Subspace::ZSminus})
        if (name == subspace_name(s)) return s;
    throw std::invalid_argument("unknown subspace name: " + name);
}

constexpr std::array<Subspace, 8> kNonTrivialSubspaces = {
    Subspace::CCplus, Subspace::CCminus, Subspace::CSplus, Subspace::CSminus,
    Subspace::ZCplus, Subspace::ZCminus, Subspace::ZSplus, Subspace::ZSminus};

// One sampled base-function column (6 components over a time grid).
struct BasisColumn {
    Subspace label;
    int n = 0;
    Coord coord = Coord::X;
    Eigen::Matrix<double, 6, Eigen::Dynamic> samples;
};

using SampleMatrix = Eigen::Matrix<double, 6, Eigen::Dynamic>;

inline std::vector<double> uniform_grid(double T, int S) {
    std::vector<double> t(S);
    for (int s = 0; s < S; ++s) t[s] = T * s / S;
    return t;
}

namespace detail {
// (-1)^{floor((n+1)/2)}
inline double eps_phase(int n) { return (((n + 1) / 2) % 2 == 0) ? 1.0 : -1.0; }
}  // namespace detail

// Sample one base-function column of the given family on the grid.
// n is 1-based: 1..N for choreographic families, 1..2N for zero-choreographic.
inline BasisColumn basis_eval(Subspace label, const IndexSequences& seqs, int n, Coord coord,
                              const std::vector<double>& grid, double T) {
    const int N = seqs.N;
    const double nu = 2.0 * std::numbers::pi / T;
    const int S = static_cast<int>(grid.size());
    BasisColumn col{label, n, coord, SampleMatrix::Zero(6, S)};

    auto f = [&](double x) { return is_cos_family(label) ? std::cos(x) : std::sin(x); };
    const int row0 = (coord == Coord::X) ? 0 : 1;

    if (is_choreographic(label)) {
        if (n < 1 || n > N) throw std::out_of_range("basis_eval: choreographic n out of range");
        const bool x_odd = is_plus_family(label);  // cc+/cs+ put k^o in x, k^e in y
        const std::vector<int>& kx = x_odd ? seqs.ko : seqs.ke;
        const std::vector<int>& ky = x_odd ? seqs.ke : seqs.ko;
        const int k = (coord == Coord::X) ? kx[n - 1] : ky[n - 1];
        for (int s = 0; s < S; ++s) {
            const double t = grid[s];
            col.samples(row0, s) = f(k * nu * t);
            col.samples(row0 + 2, s) = f(k * nu * (t + T / 3.0));
            col.samples(row0 + 4, s) = f(k * nu * (t - T / 3.0));
        }
        return col;
    }
    if (is_zero_choreographic(label)) {
        if (n < 1 || n > 2 * N)
            throw std::out_of_range("basis_eval: zero-choreographic n out of range");
        const double eps_label = is_plus_family(label) ? 1.0 : -1.0;
        const std::vector<int>& lx = is_plus_family(label) ? seqs.lo : seqs.le;
        const std::vector<int>& ly = is_plus_family(label) ? seqs.le : seqs.lo;
        const int l = (coord == Coord::X) ? lx[n - 1] : ly[n - 1];
        // x column carries phase +eps, y column the opposite
        const double coord_sign = (coord == Coord::X) ? 1.0 : -1.0;
        const double ph = eps_label * coord_sign * detail::eps_phase(n) * 2.0 * std::numbers::pi / 3.0;
        const double amp = is_cos_family(label) ? 1.0 : ((n % 2 == 1) ? 1.0 : -1.0);
        for (int s = 0; s < S; ++s) {
            const double t = grid[s];
            col.samples(row0, s) = amp * f(l * nu * t);
            col.samples(row0 + 2, s) = amp * f(l * nu * t + ph);
            col.samples(row0 + 4, s) = amp * f(l * nu * t - ph);
        }
        return col;
    }
    throw std::invalid_argument("basis_eval: trivial subspace has no sampled basis");
}

// Inner product (2/(3T)) int_0^T phi.psi dt by the trapezoid rule on a
// uniform grid (endpoint excluded; exact for band-limited integrands).
inline double inner_product(const SampleMatrix& a, const SampleMatrix& b) {
    const int S = static_cast<int>(a.cols());
    return (2.0 / 3.0) * a.cwiseProduct(b).sum() / S;
}

namespace detail {
inline void require_commensurate(int S) {
    if (S % 6 != 0)
        throw std::invalid_argument("symmetry operators need a grid length divisible by 6");
}
// psi(t) -> psi(t + shift*T/den) as an exact column rotation
inline SampleMatrix time_shift(const SampleMatrix& psi, int num, int den) {
    const int S = static_cast<int>(psi.cols());
    const int shift = ((S * num / den) % S + S) % S;
    SampleMatrix out(6, S);
    for (int s = 0; s < S; ++s) out.col(s) = psi.col((s + shift) % S);
    return out;
}
}  // namespace detail

// C = sigma^{-1} R^{1/3}: (C psi)(t) = (psi_2, psi_0, psi_1)(t + T/3)
inline SampleMatrix apply_C(const SampleMatrix& psi) {
    detail::require_commensurate(static_cast<int>(psi.cols()));
    SampleMatrix shifted = detail::time_shift(psi, 1, 3);
    SampleMatrix out(6, shifted.cols());
    out.row(0) = shifted.row(4);
    out.row(1) = shifted.row(5);
    out.row(2) = shifted.row(0);
    out.row(3) = shifted.row(1);
    out.row(4) = shifted.row(2);
    out.row(5) = shifted.row(3);
    return out;
}

// T = tau Theta: (T psi)(t) = (psi_0, psi_2, psi_1)(-t)
inline SampleMatrix apply_T(const SampleMatrix& psi) {
    const int S = static_cast<int>(psi.cols());
    detail::require_commensurate(S);
    SampleMatrix out(6, S);
    for (int s = 0; s < S; ++s) {
        const int sr = (S - s) % S;
        out(0, s) = psi(0, sr);
        out(1, s) = psi(1, sr);
        out(2, s) = psi(4, sr);
        out(3, s) = psi(5, sr);
        out(4, s) = psi(2, sr);
        out(5, s) = psi(3, sr);
    }
    return out;
}

// M = mu R^{1/2}: (M psi)(t) = mu psi(t + T/2), mu negates x components
inline SampleMatrix apply_M(const SampleMatrix& psi) {
    detail::require_commensurate(static_cast<int>(psi.cols()));
    SampleMatrix out = detail::time_shift(psi, 1, 2);
    out.row(0) *= -1.0;
    out.row(2) *= -1.0;
    out.row(4) *= -1.0;
    return out;
}

// sigma: cyclic body permutation (no time action)
inline SampleMatrix apply_sigma(const SampleMatrix& psi) {
    SampleMatrix out(6, psi.cols());
    out.row(0) = psi.row(2);
    out.row(1) = psi.row(3);
    out.row(2) = psi.row(4);
    out.row(3) = psi.row(5);
    out.row(4) = psi.row(0);
    out.row(5) = psi.row(1);
    return out;
}

inline SampleMatrix project_sigma(const SampleMatrix& psi) {
    const SampleMatrix s1 = apply_sigma(psi);
    return (psi + s1 + apply_sigma(s1)) / 3.0;
}

inline SampleMatrix project_C(const SampleMatrix& psi) {
    const SampleMatrix c1 = apply_C(psi);
    return (psi + c1 + apply_C(c1)) / 3.0;
}

inline SampleMatrix project_T(const SampleMatrix& psi) { return (psi + apply_T(psi)) / 2.0; }

inline SampleMatrix project_M(const SampleMatrix& psi) { return (psi + apply_M(psi)) / 2.0; }

// Eigenvalues (C', T', M') of a non-trivial family per the subspace table.
// C is listed via P_C' (1 for choreographic, 0 for zero-choreographic).
struct SubspaceEigenvalues {
    int pc;  // P_C' = 1 or 0
    int tp;  // T' = +1 or -1
    int mp;  // M' = +1 or -1
};

inline SubspaceEigenvalues subspace_eigenvalues(Subspace s) {
    switch (s) {
        case Subspace::CCplus: return {1, 1, 1};
        case Subspace::CCminus: return {1, 1, -1};
        case Subspace::CSplus: return {1, -1, 1};
        case Subspace::CSminus: return {1, -1, -1};
        case Subspace::ZCplus: return {0, 1, 1};
        case Subspace::ZCminus: return {0, 1, -1};
        case Subspace::ZSplus: return {0, -1, 1};
        case Subspace::ZSminus: return {0, -1, -1};
        default: throw std::invalid_argument("subspace_eigenvalues: non-trivial labels only");
    }
}

// Numerical verification of the projector identities on a sample function.
struct ProjectorReport {
    double max_idempotency = 0.0;   // max |P(P-1) psi|
    double max_commutator = 0.0;    // max over pairs |[P,Q] psi|
    double max_eigen_residual = 0.0;  // basis columns vs their labeled eigenspace
};

inline ProjectorReport projector_check(const IndexSequences& seqs, double T, int S,
                                       const SampleMatrix& random_psi) {
    ProjectorReport rep;
    using Proj = SampleMatrix (*)(const SampleMatrix&);
    const std::array<Proj, 4> projs = {&project_sigma, &project_C, &project_T, &project_M};
    for (auto p : projs) {
        const SampleMatrix pp = p(random_psi);
        rep.max_idempotency = std::max(rep.max_idempotency, (p(pp) - pp).cwiseAbs().maxCoeff());
    }
    for (std::size_t i = 0; i < projs.size(); ++i)
        for (std::size_t j = i + 1; j < projs.size(); ++j) {
            const SampleMatrix ab = projs[i](projs[j](random_psi));
            const SampleMatrix ba = projs[j](projs[i](random_psi));
            rep.max_commutator = std::max(rep.max_commutator, (ab - ba).cwiseAbs().maxCoeff());
        }
    const auto grid = uniform_grid(T, S);
    for (Subspace label : kNonTrivialSubspaces) {
        const auto ev = subspace_eigenvalues(label);
        const int count = is_choreographic(label) ? seqs.N : 2 * seqs.N;
        for (int n = 1; n <= count; ++n)
            for (Coord c : {Coord::X, Coord::Y}) {
                const auto col = basis_eval(label, seqs, n, c, grid, T);
                double r = project_sigma(col.samples).cwiseAbs().maxCoeff();
                r = std::max(r, (project_C(col.samples) - ev.pc * col.samples).cwiseAbs().maxCoeff());
                r = std::max(r, (apply_T(col.samples) - ev.tp * col.samples).cwiseAbs().maxCoeff());
                r = std::max(r, (apply_M(col.samples) - ev.mp * col.samples).cwiseAbs().maxCoeff());
                rep.max_eigen_residual = std::max(rep.max_eigen_residual, r);
            }
    }
    return rep;
}

}  // namespace choreo

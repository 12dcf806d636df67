#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "choreo/orbit.hpp"
#include "choreo/potential.hpp"

namespace choreo {

// Brute-force Hessian in the raw product basis
// {1, cos(k nu t), sin(k nu t); k=1..3N} x {3 bodies} x {x,y},
// dimension 6(6N+1). Validates the symmetry-block decomposition: its
// spectrum must equal the multiset union of the trivial spectrum and the
// eight block spectra (with the truncated l^e endpoint modes included).
inline Eigen::MatrixXd assemble_full_oracle(const ChoreographyOrbit& orbit,
                                            const PotentialSpec& spec, int N, int samples = 0,
                                            int max_N = 5) {
    if (N > (1 << max_N))
        throw std::invalid_argument("assemble_full_oracle: N exceeds the size guard");
    const int S = samples > 0 ? samples : 12 * N;
    if (S % 6 != 0) throw std::invalid_argument("assemble_full_oracle: samples must divide by 6");
    const double T = orbit.period;
    const double nu = 2.0 * std::numbers::pi / T;
    const int F = 6 * N + 1;  // temporal modes per (body, coord)
    const int dim = 6 * F;

    // temporal design matrix, columns normalized to unit norm under
    // (2/(3T)) int f^2 summed over one body component
    Eigen::MatrixXd design(S, F);
    std::vector<double> omega(F);
    for (int s = 0; s < S; ++s) {
        const double t = T * s / S;
        design(s, 0) = std::sqrt(1.5);
        for (int k = 1; k <= 3 * N; ++k) {
            design(s, k) = std::sqrt(3.0) * std::cos(k * nu * t);
            design(s, 3 * N + k) = std::sqrt(3.0) * std::sin(k * nu * t);
        }
    }
    omega[0] = 0.0;
    for (int k = 1; k <= 3 * N; ++k) omega[k] = omega[3 * N + k] = k * nu;

    // A(t) = t(Delta) U(t) Delta at each sample
    std::vector<Eigen::Matrix<double, 6, 6>> A(S);
    const std::array<double, 3> shifts = {0.0, T / 3.0, -T / 3.0};
    Eigen::Matrix<double, 6, 6> Delta = Eigen::Matrix<double, 6, 6>::Zero();
    const Eigen::Matrix2d I2 = Eigen::Matrix2d::Identity();
    Delta.block<2, 2>(0, 2) = I2;
    Delta.block<2, 2>(0, 4) = -I2;
    Delta.block<2, 2>(2, 0) = -I2;
    Delta.block<2, 2>(2, 4) = I2;
    Delta.block<2, 2>(4, 0) = I2;
    Delta.block<2, 2>(4, 2) = -I2;
    for (int s = 0; s < S; ++s) {
        const double t = T * s / S;
        std::array<Eigen::Vector2d, 3> q;
        for (int l = 0; l < 3; ++l) q[l] = orbit.position(t + shifts[l]);
        Eigen::Matrix<double, 6, 6> U = Eigen::Matrix<double, 6, 6>::Zero();
        U.block<2, 2>(0, 0) = pair_hessian(spec, q[1] - q[2]);  // u_12
        U.block<2, 2>(2, 2) = pair_hessian(spec, q[2] - q[0]);  // u_20
        U.block<2, 2>(4, 4) = pair_hessian(spec, q[0] - q[1]);  // u_01
        A[s] = Delta.transpose() * U * Delta;
    }

    // index layout: (body, coord) major, temporal mode minor
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int p = 0; p < 6; ++p)
        for (int q = p; q < 6; ++q) {
            Eigen::VectorXd apq(S);
            for (int s = 0; s < S; ++s) apq(s) = A[s](p, q);
            const Eigen::MatrixXd block =
                (2.0 / (3.0 * S)) * design.transpose() * apq.asDiagonal() * design;
            H.block(p * F, q * F, F, F) = block;
            if (q != p) H.block(q * F, p * F, F, F) = block.transpose();
        }
    for (int p = 0; p < 6; ++p)
        for (int j = 0; j < F; ++j) H(p * F + j, p * F + j) += omega[j] * omega[j];
    return H;
}

// Time-domain discretization of the Hessian on the zero-centre-of-mass
// subspace, with delta q_2 = -(delta q_0 + delta q_1) eliminated. Returns a
// generalized symmetric pair (A, B): eigenvalues of A v = lambda B v
// approximate the non-trivial spectrum. Spectral differentiation in time.
struct TimeDomainOperator {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
};

inline TimeDomainOperator assemble_timedomain_oracle(const ChoreographyOrbit& orbit,
                                                     const PotentialSpec& spec, int S,
                                                     bool zero_potential = false) {
    // even S: the spectral kernel carries an explicit Nyquist term
    if (S < 6 || S % 2 != 0)
        throw std::invalid_argument("assemble_timedomain_oracle: S must be even and >= 6");
    const double T = orbit.period;
    const double nu = 2.0 * std::numbers::pi / T;
    const int dim = 4 * S;

    // metric induced by the elimination: G = [[2,1],[1,2]] (x) I2 per sample
    Eigen::Matrix4d G = Eigen::Matrix4d::Zero();
    const Eigen::Matrix2d I2 = Eigen::Matrix2d::Identity();
    G.block<2, 2>(0, 0) = 2.0 * I2;
    G.block<2, 2>(0, 2) = I2;
    G.block<2, 2>(2, 0) = I2;
    G.block<2, 2>(2, 2) = 2.0 * I2;

    // periodic spectral -d^2/dt^2 kernel
    Eigen::VectorXd kern(S);
    for (int d = 0; d < S; ++d) {
        double acc = 0.0;
        for (int k = 1; k < S / 2; ++k)
            acc += 2.0 * (k * nu) * (k * nu) * std::cos(2.0 * std::numbers::pi * k * d / S);
        acc += (S / 2 * nu) * (S / 2 * nu) * std::cos(std::numbers::pi * d);
        kern(d) = acc / S;
    }

    TimeDomainOperator op;
    op.A = Eigen::MatrixXd::Zero(dim, dim);
    op.B = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < S; ++s)
        for (int r = 0; r < S; ++r)
            op.A.block<4, 4>(4 * s, 4 * r) = kern((r - s + S) % S) * G;
    for (int s = 0; s < S; ++s) op.B.block<4, 4>(4 * s, 4 * s) = G;

    if (!zero_potential) {
        const std::array<double, 3> shifts = {0.0, T / 3.0, -T / 3.0};
        Eigen::Matrix<double, 2, 4> B01, B12, B20;
        B01 << 1, 0, -1, 0, 0, 1, 0, -1;   // dq0 - dq1
        B12 << 1, 0, 2, 0, 0, 1, 0, 2;     // dq1 - dq2 = dq0 + 2 dq1
        B20 << -2, 0, -1, 0, 0, -2, 0, -1; // dq2 - dq0
        for (int s = 0; s < S; ++s) {
            const double t = T * s / S;
            std::array<Eigen::Vector2d, 3> q;
            for (int l = 0; l < 3; ++l) q[l] = orbit.position(t + shifts[l]);
            Eigen::Matrix4d P = Eigen::Matrix4d::Zero();
            P += B01.transpose() * pair_hessian(spec, q[0] - q[1]) * B01;
            P += B12.transpose() * pair_hessian(spec, q[1] - q[2]) * B12;
            P += B20.transpose() * pair_hessian(spec, q[2] - q[0]) * B20;
            op.A.block<4, 4>(4 * s, 4 * s) += P;
        }
    }
    return op;
}

}  // namespace choreo

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "choreo/potential.hpp"
#include "choreo/sequences.hpp"

namespace choreo {

// Minimum pair separation tolerated on a quadrature grid.
inline constexpr double kCollisionRadius = 1e-9;

// A choreographic loop in the figure-eight symmetry class: x(t) is a sine
// series on the odd harmonics k^o = {1,5,7,11,...}, y(t) on the even
// harmonics k^e = {2,4,8,10,...}. Bodies 1 and 2 follow body 0 with time
// shifts +-T/3; no harmonic is a multiple of 3, so the centre of mass
// vanishes identically.
struct ChoreographyOrbit {
    double period = 2.0 * std::numbers::pi;
    int cutoff = 32;          // Nq: n ranges over 1..Nq in k^o / k^e
    std::vector<double> ax;   // ax[n-1] multiplies sin(k^o_n nu t)
    std::vector<double> ay;   // ay[n-1] multiplies sin(k^e_n nu t)
    PotentialSpec potential;
    double residual = std::numeric_limits<double>::infinity();

    double nu() const { return 2.0 * std::numbers::pi / period; }

    // Loop position and velocity of body 0 at time t.
    void eval(double t, Eigen::Vector2d& pos, Eigen::Vector2d& vel) const {
        pos.setZero();
        vel.setZero();
        const double v = nu();
        for (int n = 1; n <= cutoff; ++n) {
            const double wo = seq::k_odd(n) * v;
            const double we = seq::k_even(n) * v;
            pos.x() += ax[n - 1] * std::sin(wo * t);
            pos.y() += ay[n - 1] * std::sin(we * t);
            vel.x() += ax[n - 1] * wo * std::cos(wo * t);
            vel.y() += ay[n - 1] * we * std::cos(we * t);
        }
    }

    Eigen::Vector2d position(double t) const {
        Eigen::Vector2d p, v;
        eval(t, p, v);
        return p;
    }
};

inline ChoreographyOrbit default_seed(const PotentialSpec& spec, double T, int Nq) {
    ChoreographyOrbit o;
    o.period = T;
    o.cutoff = Nq;
    o.ax.assign(Nq, 0.0);
    o.ay.assign(Nq, 0.0);
    o.ax[0] = 1.0;    // sin(nu t) in x
    o.ay[0] = -0.5;   // sin(2 nu t) in y
    o.potential = spec;
    return o;
}

struct BodyStates {
    std::vector<double> times;
    std::array<std::vector<Eigen::Vector2d>, 3> positions;
    std::array<std::vector<Eigen::Vector2d>, 3> velocities;
};

inline BodyStates sample_orbit(const ChoreographyOrbit& orbit, int S) {
    if (S < 1) throw std::invalid_argument("sample_orbit: S must be >= 1");
    BodyStates st;
    st.times.resize(S);
    const double T = orbit.period;
    const std::array<double, 3> shifts = {0.0, T / 3.0, -T / 3.0};
    for (int l = 0; l < 3; ++l) {
        st.positions[l].resize(S);
        st.velocities[l].resize(S);
    }
    for (int s = 0; s < S; ++s) {
        const double t = T * s / S;
        st.times[s] = t;
        for (int l = 0; l < 3; ++l)
            orbit.eval(t + shifts[l], st.positions[l][s], st.velocities[l][s]);
    }
    return st;
}

namespace detail {

inline void check_collisions(const BodyStates& st) {
    const int S = static_cast<int>(st.times.size());
    for (int s = 0; s < S; ++s)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if ((st.positions[i][s] - st.positions[j][s]).norm() < kCollisionRadius)
                    throw CollisionError("orbit collision near t=" + std::to_string(st.times[s]));
}

}  // namespace detail

inline int default_quadrature_samples(int Nq) { return std::max(256, 8 * 3 * Nq); }

// Action S[q] = int_0^T [ 1/2 sum |dq_l/dt|^2 + sum_{i<j} V(r_ij) ] dt,
// trapezoid rule on a uniform grid.
inline double action(const ChoreographyOrbit& orbit, int S) {
    const auto st = sample_orbit(orbit, S);
    detail::check_collisions(st);
    double acc = 0.0;
    for (int s = 0; s < S; ++s) {
        double kin = 0.0;
        for (int l = 0; l < 3; ++l) kin += st.velocities[l][s].squaredNorm();
        double pot = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                pot += potential_derivs(orbit.potential,
                                        (st.positions[i][s] - st.positions[j][s]).norm())
                           .V;
        acc += 0.5 * kin + pot;
    }
    return acc * orbit.period / S;
}

// Gradient of the action with respect to the interleaved coefficient vector
// (ax_1, ay_1, ax_2, ay_2, ...), dimension 2*Nq.
inline Eigen::VectorXd action_gradient(const ChoreographyOrbit& orbit, int S) {
    const auto st = sample_orbit(orbit, S);
    detail::check_collisions(st);
    const int Nq = orbit.cutoff;
    const double T = orbit.period;
    const double v = orbit.nu();
    const std::array<double, 3> shifts = {0.0, T / 3.0, -T / 3.0};

    // Per-sample gradient of the pair potential with respect to each body.
    std::array<std::vector<Eigen::Vector2d>, 3> force;
    for (int l = 0; l < 3; ++l) force[l].assign(S, Eigen::Vector2d::Zero());
    for (int s = 0; s < S; ++s)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const Eigen::Vector2d d = st.positions[i][s] - st.positions[j][s];
                const double r = d.norm();
                const Eigen::Vector2d g =
                    potential_derivs(orbit.potential, r).V1 * d / r;
                force[i][s] += g;
                force[j][s] -= g;
            }

    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * Nq);
    for (int s = 0; s < S; ++s) {
        const double t = st.times[s];
        for (int l = 0; l < 3; ++l) {
            const double tl = t + shifts[l];
            for (int n = 1; n <= Nq; ++n) {
                const double wo = seq::k_odd(n) * v;
                const double we = seq::k_even(n) * v;
                grad(2 * (n - 1)) += st.velocities[l][s].x() * wo * std::cos(wo * tl) +
                                     force[l][s].x() * std::sin(wo * tl);
                grad(2 * (n - 1) + 1) += st.velocities[l][s].y() * we * std::cos(we * tl) +
                                         force[l][s].y() * std::sin(we * tl);
            }
        }
    }
    return grad * T / S;
}

}  // namespace choreo

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include "choreo/elements.hpp"
#include "choreo/orbit.hpp"
#include "choreo/useries.hpp"

namespace choreo {

struct SolveFailure : std::runtime_error {
    SolveFailure(const std::string& msg, ChoreographyOrbit best)
        : std::runtime_error(msg), best_iterate(std::move(best)) {}
    ChoreographyOrbit best_iterate;
};

namespace detail {

inline Eigen::VectorXd pack(const ChoreographyOrbit& o) {
    Eigen::VectorXd a(2 * o.cutoff);
    for (int n = 0; n < o.cutoff; ++n) {
        a(2 * n) = o.ax[n];
        a(2 * n + 1) = o.ay[n];
    }
    return a;
}

inline void unpack(const Eigen::VectorXd& a, ChoreographyOrbit& o) {
    for (int n = 0; n < o.cutoff; ++n) {
        o.ax[n] = a(2 * n);
        o.ay[n] = a(2 * n + 1);
    }
}

// Second variation of the action restricted to the symmetry class: the
// cs+ Hessian block at the current loop, scaled by 3T/2 (the norm factor
// between the block inner product and the raw action integral).
inline Eigen::MatrixXd class_hessian(const ChoreographyOrbit& o, const IndexSequences& seqs) {
    const auto ser = u_series(o, o.potential, seqs.N);
    const auto blk = assemble_block(Subspace::CSplus, ser, seqs, o.period);
    return (1.5 * o.period) * blk.matrix;
}

}  // namespace detail

// Minimize the action over the figure-eight symmetry class: gradient descent
// with backtracking to enter the basin, then Newton with the exact in-class
// Hessian. Collisions during a line search reject the step.
inline ChoreographyOrbit find_figure_eight(const PotentialSpec& spec, double T, int Nq,
                                           std::optional<ChoreographyOrbit> seed,
                                           double tol = 1e-10, int max_iter = 500) {
    if (tol <= 0.0) throw std::invalid_argument("find_figure_eight: tol must be positive");
    ChoreographyOrbit orbit = seed ? *seed : default_seed(spec, T, Nq);
    orbit.potential = spec;
    if (orbit.period != T || orbit.cutoff != Nq)
        throw std::invalid_argument("find_figure_eight: seed period/cutoff mismatch");

    const int S = default_quadrature_samples(Nq);
    const auto seqs = build_sequences(Nq);
    Eigen::VectorXd a = detail::pack(orbit);

    auto try_action = [&](const Eigen::VectorXd& coeffs) -> std::optional<double> {
        detail::unpack(coeffs, orbit);
        try {
            return action(orbit, S);
        } catch (const CollisionError&) {
            return std::nullopt;
        }
    };

    double fval;
    if (auto f0 = try_action(a)) fval = *f0;
    else throw CollisionError("find_figure_eight: seed orbit has a collision");

    Eigen::VectorXd grad = action_gradient(orbit, S);
    double gmax = grad.cwiseAbs().maxCoeff();

    for (int it = 0; it < max_iter; ++it) {
        if (gmax <= tol) {
            orbit.residual = gmax;
            return orbit;
        }
        // modified Newton: clamp Hessian eigenvalues to |lambda| so the
        // direction is downhill even before the basin (the high harmonics
        // are far too stiff for plain gradient descent)
        detail::unpack(a, orbit);
        const Eigen::MatrixXd H = detail::class_hessian(orbit, seqs);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        Eigen::VectorXd lam = es.eigenvalues().cwiseAbs();
        const double floor_ = 1e-10 * lam.maxCoeff();
        for (int i = 0; i < lam.size(); ++i) lam(i) = std::max(lam(i), floor_);
        const Eigen::VectorXd dir =
            -(es.eigenvectors() *
              lam.cwiseInverse().asDiagonal() * (es.eigenvectors().transpose() * grad));

        // endgame: once |grad| is tiny the predicted decrease drops below the
        // rounding noise of the action, so take pure Newton steps instead of
        // insisting on sufficient decrease
        const bool pure_newton = gmax < 1e-6;
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            const Eigen::VectorXd trial = a + alpha * dir;
            if (auto ft = try_action(trial)) {
                if (pure_newton || *ft <= fval + 1e-4 * alpha * grad.dot(dir)) {
                    a = trial;
                    fval = *ft;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            detail::unpack(a, orbit);
            orbit.residual = gmax;
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3e", gmax);
            throw SolveFailure(std::string("find_figure_eight: line search stalled at residual ") +
                                   buf,
                               orbit);
        }
        detail::unpack(a, orbit);
        grad = action_gradient(orbit, S);
        gmax = grad.cwiseAbs().maxCoeff();
    }
    detail::unpack(a, orbit);
    orbit.residual = gmax;
    if (gmax <= tol) return orbit;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", gmax);
    throw SolveFailure("find_figure_eight: no convergence after " + std::to_string(max_iter) +
                           " iterations, residual " + buf,
                       orbit);
}

}  // namespace choreo

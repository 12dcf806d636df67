#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace choreo {

enum class PotentialKind { PowerLaw, LennardJones };

// Pairwise potential family: power law alpha^{-1} r^{-alpha} (log r for
// alpha = 0) with coupling g2, or Lennard-Jones a r^{-alpha} - b r^{-beta}.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::PowerLaw;
    double alpha = 1.0;
    double beta = 0.0;   // LJ attractive exponent
    double a = 0.0;      // LJ repulsive coefficient
    double b = 0.0;      // LJ attractive coefficient
    double g2 = 1.0;     // coupling, power law only

    static PotentialSpec power_law(double alpha, double g2 = 1.0) {
        PotentialSpec s;
        s.kind = PotentialKind::PowerLaw;
        s.alpha = alpha;
        s.g2 = g2;
        s.validate();
        return s;
    }

    static PotentialSpec lennard_jones(double a, double alpha, double b, double beta) {
        PotentialSpec s;
        s.kind = PotentialKind::LennardJones;
        s.a = a;
        s.alpha = alpha;
        s.b = b;
        s.beta = beta;
        s.g2 = 1.0;
        s.validate();
        return s;
    }

    void validate() const {
        if (kind == PotentialKind::PowerLaw) {
            if (g2 <= 0.0)
                throw std::invalid_argument("PotentialSpec: g2 must be positive");
        } else {
            if (!(alpha > beta && beta > 0.0))
                throw std::invalid_argument("PotentialSpec: LJ requires alpha > beta > 0");
            if (a <= 0.0 || b <= 0.0)
                throw std::invalid_argument("PotentialSpec: LJ requires a > 0 and b > 0");
        }
    }
};

struct PotentialDerivs {
    double V;   // V(r)
    double V1;  // dV/dr
    double V2;  // d^2V/dr^2
};

struct CollisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline PotentialDerivs potential_derivs(const PotentialSpec& spec, double r) {
    if (r <= 0.0)
        throw std::domain_error("potential_derivs: r must be positive, got " + std::to_string(r));
    if (spec.kind == PotentialKind::PowerLaw) {
        const double al = spec.alpha;
        if (al == 0.0)
            return {spec.g2 * std::log(r), spec.g2 / r, -spec.g2 / (r * r)};
        const double p = std::pow(r, -al);
        return {spec.g2 * p / al, -spec.g2 * p / r, spec.g2 * (al + 1.0) * p / (r * r)};
    }
    const double pa = spec.a * std::pow(r, -spec.alpha);
    const double pb = spec.b * std::pow(r, -spec.beta);
    return {pa - pb,
            (-spec.alpha * pa + spec.beta * pb) / r,
            (spec.alpha * (spec.alpha + 1.0) * pa - spec.beta * (spec.beta + 1.0) * pb) / (r * r)};
}

// Second derivative of V(|dq|) with respect to the displacement dq:
// u = V'' n n^t + (V'/r)(1 - n n^t), n = dq/r.
inline Eigen::Matrix2d pair_hessian(const PotentialSpec& spec, const Eigen::Vector2d& dq) {
    const double r = dq.norm();
    if (r == 0.0)
        throw CollisionError("pair_hessian: zero displacement (collision)");
    const auto d = potential_derivs(spec, r);
    const Eigen::Vector2d n = dq / r;
    return d.V2 * (n * n.transpose()) + (d.V1 / r) * (Eigen::Matrix2d::Identity() - n * n.transpose());
}

}  // namespace choreo

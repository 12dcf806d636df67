#pragma once

#include <fftw3.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "choreo/orbit.hpp"
#include "choreo/potential.hpp"

namespace choreo {

// Cosine-transform tables of the pairwise curvature matrix along the orbit,
// u~^{ab}(k) = (1/T) int_0^T u^{ab}(t) cos(k nu t) dt, k = 0..Kmax.
// u(t) is the 2x2 second derivative of V at the displacement between the
// bodies one and two time-steps ahead; u is even in t for this symmetry
// class, so the cosine table carries everything.
struct PairHessianSeries {
    int Kmax = 0;
    std::vector<double> uxx, uxy, uyy;

    // u~(-k) = u~(k)
    double xx(int k) const { return uxx[index(k)]; }
    double xy(int k) const { return uxy[index(k)]; }
    double yx(int k) const { return uxy[index(k)]; }
    double yy(int k) const { return uyy[index(k)]; }

    int index(int k) const {
        const int a = std::abs(k);
        if (a > Kmax) throw std::out_of_range("PairHessianSeries: harmonic beyond table");
        return a;
    }
};

namespace detail {

// Real-input FFT cosine estimate: out[k] = (1/S) sum_s in[s] cos(2 pi k s / S).
inline std::vector<double> cosine_table(const std::vector<double>& in, int kmax) {
    const int S = static_cast<int>(in.size());
    std::vector<double> work(in);
    std::vector<fftw_complex> out(S / 2 + 1);
    fftw_plan plan =
        fftw_plan_dft_r2c_1d(S, work.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> table(kmax + 1);
    for (int k = 0; k <= kmax; ++k) table[k] = out[k][0] / S;
    return table;
}

}  // namespace detail

// Build the tables to Kmax = 6N from S = 12N uniform samples of u(t).
// An explicit sample count may be passed for alias-freedom checks.
inline PairHessianSeries u_series(const ChoreographyOrbit& orbit, const PotentialSpec& spec,
                                  int N, int samples = 0) {
    const int kmax = 6 * N;
    const int S = samples > 0 ? samples : 12 * N;
    if (S < 2 * kmax) throw std::invalid_argument("u_series: sample count below Nyquist bound");
    const double T = orbit.period;
    std::vector<double> sxx(S), sxy(S), syy(S);
    for (int s = 0; s < S; ++s) {
        const double t = T * s / S;
        const Eigen::Vector2d d = orbit.position(t + T / 3.0) - orbit.position(t - T / 3.0);
        if (d.norm() < kCollisionRadius)
            throw CollisionError("u_series: collision near t=" + std::to_string(t));
        const Eigen::Matrix2d u = pair_hessian(spec, d);
        sxx[s] = u(0, 0);
        sxy[s] = u(0, 1);
        syy[s] = u(1, 1);
    }
    PairHessianSeries ser;
    ser.Kmax = kmax;
    ser.uxx = detail::cosine_table(sxx, kmax);
    ser.uxy = detail::cosine_table(sxy, kmax);
    ser.uyy = detail::cosine_table(syy, kmax);
    return ser;
}

}  // namespace choreo

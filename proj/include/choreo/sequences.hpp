#pragma once

#include <stdexcept>
#include <vector>

namespace choreo {

// Closed forms for the harmonic index sequences.
//
// k_n  = 1,2,4,5,7,8,...      positive integers not divisible by 3
// k^o  = 1,5,7,11,...         odd members of k_n
// k^e  = 2,4,8,10,...         even members of k_n
// l_n  = 0,1,2,3,3,4,5,6,6,... nonnegative integers with positive
//                              multiples of 3 doubled
// l^o, l^e                    odd/even members of l_n

namespace seq {

// 2 Re((1+i) i^n): cycle 2,-2,-2,2 for n mod 4 = 0,1,2,3
inline int cyc4(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return 2;
        case 1: return -2;
        case 2: return -2;
        default: return 2;
    }
}

inline int sgn(int n) { return (n % 2 == 0) ? 1 : -1; }

inline int k(int n) { return (6 * n - sgn(n) - 3) / 4; }
inline int k_odd(int n) { return (6 * n + sgn(n) - 3) / 2; }
inline int k_even(int n) { return (6 * n - sgn(n) - 3) / 2; }
inline int l(int n) { return (6 * n + sgn(n) + cyc4(n) - 3) / 8; }
inline int l_odd(int n) { return (6 * n + sgn(n) - cyc4(n) - 3) / 4; }
inline int l_even(int n) { return (6 * n + sgn(n) + cyc4(n) - 3) / 4; }

}  // namespace seq

struct IndexSequences {
    int N = 0;
    std::vector<int> k;   // size 2N
    std::vector<int> ko;  // size N
    std::vector<int> ke;  // size N
    std::vector<int> l;   // size 4N+1
    std::vector<int> lo;  // size 2N
    std::vector<int> le;  // size 2N (last element of the full series omitted)

    // The element dropped from l^e so the odd/even counts match; equals 3N.
    int le_omitted() const { return seq::l_even(2 * N + 1); }
};

inline IndexSequences build_sequences(int N) {
    if (N < 1)
        throw std::invalid_argument("build_sequences: N must be >= 1");
    IndexSequences s;
    s.N = N;
    s.k.reserve(2 * N);
    for (int n = 1; n <= 2 * N; ++n) s.k.push_back(seq::k(n));
    for (int n = 1; n <= N; ++n) {
        s.ko.push_back(seq::k_odd(n));
        s.ke.push_back(seq::k_even(n));
    }
    for (int n = 1; n <= 4 * N + 1; ++n) s.l.push_back(seq::l(n));
    for (int n = 1; n <= 2 * N; ++n) {
        s.lo.push_back(seq::l_odd(n));
        s.le.push_back(seq::l_even(n));
    }
    return s;
}

inline IndexSequences build_sequences_pow2(int M) {
    if (M < 0)
        throw std::invalid_argument("build_sequences_pow2: M must be >= 0");
    return build_sequences(1 << M);
}

}  // namespace choreo

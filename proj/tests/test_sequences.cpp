#include <catch_amalgamated.hpp>

#include "choreo/sequences.hpp"

using namespace choreo;

namespace {

// Reference construction by sieving rather than closed forms.
std::vector<int> sieve_k(int count) {
    std::vector<int> out;
    for (int v = 1; static_cast<int>(out.size()) < count; ++v)
        if (v % 3 != 0) out.push_back(v);
    return out;
}

std::vector<int> sieve_l(int count) {
    std::vector<int> out;
    for (int v = 0; static_cast<int>(out.size()) < count; ++v) {
        out.push_back(v);
        if (v > 0 && v % 3 == 0 && static_cast<int>(out.size()) < count) out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("closed forms match the sieved sequences") {
    const int N = 12;
    const auto ref_k = sieve_k(2 * N);
    const auto ref_l = sieve_l(4 * N + 2);
    const auto s = build_sequences(N);

    REQUIRE(s.k == std::vector<int>(ref_k.begin(), ref_k.end()));
    for (int n = 1; n <= 4 * N + 1; ++n) CHECK(s.l[n - 1] == ref_l[n - 1]);

    // odd/even splits of k
    std::vector<int> ko, ke;
    for (int v : ref_k) (v % 2 ? ko : ke).push_back(v);
    CHECK(std::vector<int>(ko.begin(), ko.begin() + N) == s.ko);
    CHECK(std::vector<int>(ke.begin(), ke.begin() + N) == s.ke);

    // l split alternates parity pairwise: l^o takes the odd members, l^e the
    // even ones, each of size 2N with one trailing even member omitted
    std::vector<int> lo, le;
    for (int v : ref_l) (v % 2 ? lo : le).push_back(v);
    CHECK(std::vector<int>(lo.begin(), lo.begin() + 2 * N) == s.lo);
    CHECK(std::vector<int>(le.begin(), le.begin() + 2 * N) == s.le);
    CHECK(s.le_omitted() == 3 * N);
    CHECK(le[2 * N] == 3 * N);
}

TEST_CASE("prefix property: sequences nest under growing N") {
    const auto a = build_sequences(3);
    const auto b = build_sequences(7);
    for (std::size_t i = 0; i < a.ko.size(); ++i) CHECK(a.ko[i] == b.ko[i]);
    for (std::size_t i = 0; i < a.ke.size(); ++i) CHECK(a.ke[i] == b.ke[i]);
    for (std::size_t i = 0; i < a.lo.size(); ++i) CHECK(a.lo[i] == b.lo[i]);
    for (std::size_t i = 0; i < a.le.size(); ++i) CHECK(a.le[i] == b.le[i]);
}

TEST_CASE("first members match the defining lists") {
    CHECK(seq::k(1) == 1);
    CHECK(seq::k(2) == 2);
    CHECK(seq::k(3) == 4);
    CHECK(seq::k_odd(1) == 1);
    CHECK(seq::k_odd(2) == 5);
    CHECK(seq::k_even(1) == 2);
    CHECK(seq::k_even(2) == 4);
    CHECK(seq::l(1) == 0);
    CHECK(seq::l(4) == 3);
    CHECK(seq::l(5) == 3);
    CHECK(seq::l_odd(1) == 1);
    CHECK(seq::l_odd(2) == 3);
    CHECK(seq::l_odd(3) == 3);
    CHECK(seq::l_even(1) == 0);
    CHECK(seq::l_even(2) == 2);
}

TEST_CASE("pow2 helper and argument guards") {
    CHECK(build_sequences_pow2(3).N == 8);
    CHECK_THROWS_AS(build_sequences(0), std::invalid_argument);
    CHECK_THROWS_AS(build_sequences_pow2(-1), std::invalid_argument);
}

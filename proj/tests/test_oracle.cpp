#include <catch_amalgamated.hpp>

#include "choreo/oracle.hpp"
#include "choreo/solve.hpp"
#include "choreo/spectra.hpp"

using namespace choreo;
using Catch::Approx;

namespace {

const double T = 2.0 * std::numbers::pi;

const ChoreographyOrbit& orbit() {
    static ChoreographyOrbit o =
        find_figure_eight(PotentialSpec::power_law(1.0), T, 12, std::nullopt);
    return o;
}

}  // namespace

TEST_CASE("full-basis oracle spectrum is the union of the block spectra") {
    const auto& o = orbit();
    const int N = 4;
    const auto seqs = build_sequences(N);
    const auto ser = u_series(o, o.potential, N);

    const Eigen::MatrixXd H = assemble_full_oracle(o, o.potential, N);
    REQUIRE(H.rows() == 150);
    CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd full = lapack::eigenvalues_only(H);

    std::vector<double> uni;
    const auto triv = assemble_block(Subspace::Trivial, ser, seqs, T);
    for (int k = 0; k < triv.matrix.rows(); ++k)
        for (int c = 0; c < (k == 0 ? 2 : 4); ++c) uni.push_back(triv.matrix(k, k));
    for (Subspace lab : kNonTrivialSubspaces) {
        const Eigen::MatrixXd m = is_zero_choreographic(lab)
                                      ? assemble_block_extended(lab, ser, seqs, T).matrix
                                      : assemble_block(lab, ser, seqs, T).matrix;
        const Eigen::VectorXd ev = lapack::eigenvalues_only(m);
        uni.insert(uni.end(), ev.data(), ev.data() + ev.size());
    }
    REQUIRE(uni.size() == 150);
    std::sort(uni.begin(), uni.end());
    for (int i = 0; i < full.size(); ++i)
        CHECK(std::abs(full(i) - uni[i]) / std::max(1.0, std::abs(uni[i])) < 1e-8);
}

TEST_CASE("time-domain oracle with zero potential gives the free spectrum") {
    const int S = 48;
    const auto op = assemble_timedomain_oracle(orbit(), orbit().potential, S, true);
    const Eigen::VectorXd ev = lapack::generalized_eigenvalues(op.A, op.B);
    // -d^2/dt^2 on 4 zero-COM components: each k gives (k nu)^2 with
    // multiplicity 4 (8 for 0 < k < S/2 counting +-k)
    CHECK(ev.head(4).cwiseAbs().maxCoeff() < 1e-10);
    for (int j = 0; j < 8; ++j) CHECK(ev(4 + j) == Approx(1.0).margin(1e-10));
    for (int j = 0; j < 8; ++j) CHECK(ev(12 + j) == Approx(4.0).margin(1e-10));
}

TEST_CASE("time-domain oracle reproduces the non-trivial block spectrum") {
    const auto& o = orbit();
    const int S = 150;
    const auto op = assemble_timedomain_oracle(o, o.potential, S);
    const Eigen::VectorXd ev = lapack::generalized_eigenvalues(op.A, op.B);

    const int N = 16;
    const auto seqs = build_sequences(N);
    const auto ser = u_series(o, o.potential, N);
    std::vector<double> blocks;
    for (Subspace lab : kNonTrivialSubspaces) {
        const Eigen::VectorXd bv =
            lapack::eigenvalues_only(assemble_block(lab, ser, seqs, T).matrix);
        blocks.insert(blocks.end(), bv.data(), bv.data() + bv.size());
    }
    std::sort(blocks.begin(), blocks.end());
    for (int i = 0; i < 10; ++i)
        CHECK(ev(i) == Approx(blocks[i]).epsilon(1e-3).margin(1e-3));
}

TEST_CASE("oracle guards") {
    CHECK_THROWS_AS(assemble_full_oracle(orbit(), orbit().potential, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble_timedomain_oracle(orbit(), orbit().potential, 51),
                    std::invalid_argument);
}

// choreo: figure-eight choreography solver and action-Hessian spectra.
//
// subcommands:
//   solve     minimize the action over the figure-eight symmetry class
//   spectrum  per-subspace Hessian spectra from an orbit file
//   validate  run the internal consistency suites on an orbit
//   oracle    brute-force reference spectra (full basis / time domain)
//
// exit codes: 0 success, 1 validation or convergence failure, 2 usage error.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "choreo/elements.hpp"
#include "choreo/oracle.hpp"
#include "choreo/orbit_io.hpp"
#include "choreo/report.hpp"
#include "choreo/solve.hpp"
#include "choreo/spectra.hpp"

using namespace choreo;

namespace {

struct PotentialFlags {
    double alpha = 1.0;
    double g2 = 1.0;
    bool lj = false;
    double lj_a = 1.0, lj_alpha = 12.0, lj_b = 1.0, lj_beta = 6.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "power-law exponent (V = g^2 r^-alpha / alpha)");
        cmd->add_option("--g2", g2, "power-law coupling g^2");
        cmd->add_flag("--lj", lj, "use a Lennard-Jones pair potential");
        cmd->add_option("--a", lj_a, "LJ repulsive coefficient");
        cmd->add_option("--lj-alpha", lj_alpha, "LJ repulsive exponent");
        cmd->add_option("--b", lj_b, "LJ attractive coefficient");
        cmd->add_option("--lj-beta", lj_beta, "LJ attractive exponent");
    }

    PotentialSpec build() const {
        return lj ? PotentialSpec::lennard_jones(lj_a, lj_alpha, lj_b, lj_beta)
                  : PotentialSpec::power_law(alpha, g2);
    }
};

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHOREO_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Run one job per non-trivial subspace on a small thread pool.
template <typename Fn>
void for_each_subspace(const std::vector<Subspace>& labels, int threads, Fn fn) {
    if (threads <= 1 || labels.size() <= 1) {
        for (Subspace s : labels) fn(s);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(labels.size()));
    for (int w = 0; w < n; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < labels.size(); i = next++) fn(labels[i]);
        });
    for (auto& t : pool) t.join();
}

void print_table(const std::vector<SpectralResult>& results, int lowest) {
    for (const auto& r : results) {
        std::printf("%-4s", subspace_name(r.label));
        const int n = std::min<int>(lowest, static_cast<int>(r.lambda_tilde.size()));
        for (int i = 0; i < n; ++i) std::printf(" %12.6g", r.lambda_tilde(i));
        std::printf("\n");
    }
}

int cmd_solve(const PotentialFlags& pf, double period, int cutoff, double tol, int max_iter,
              const std::string& seed_path, const std::string& out_path) {
    const PotentialSpec spec = pf.build();
    std::optional<ChoreographyOrbit> seed;
    if (!seed_path.empty()) {
        ChoreographyOrbit s = orbit_read(seed_path);
        s.period = period;
        s.potential = spec;
        if (s.cutoff < cutoff) {
            s.ax.resize(cutoff, 0.0);
            s.ay.resize(cutoff, 0.0);
            s.cutoff = cutoff;
        }
        seed = s;
    }
    try {
        const ChoreographyOrbit orbit =
            find_figure_eight(spec, period, cutoff, seed, tol, max_iter);
        orbit_write(orbit, out_path);
        const double act = action(orbit, default_quadrature_samples(cutoff));
        std::printf("converged: residual %.3e, action %.10g\n", orbit.residual, act);
        std::printf("wrote %s\n", out_path.c_str());
        return 0;
    } catch (const SolveFailure& e) {
        const std::string failed = out_path + ".failed";
        orbit_write(e.best_iterate, failed);
        std::fprintf(stderr, "%s\nbest iterate written to %s\n", e.what(), failed.c_str());
        return 1;
    }
}

int cmd_spectrum(const std::string& orbit_path, int M, const std::string& out_json,
                 const std::string& out_csv, const std::string& only_subspace, bool dump_blocks,
                 const std::string& dump_eigenfunction, int threads, int lowest) {
    const ChoreographyOrbit orbit = orbit_read(orbit_path);
    const int N = 1 << M;
    const auto seqs = build_sequences(N);
    const auto ser = u_series(orbit, orbit.potential, N);

    std::vector<Subspace> labels;
    if (only_subspace.empty())
        labels.assign(kNonTrivialSubspaces.begin(), kNonTrivialSubspaces.end());
    else
        labels.push_back(subspace_from_name(only_subspace));

    std::vector<SpectralResult> results(labels.size());
    std::vector<SubspaceBlock> blocks(labels.size());
    std::exception_ptr err;
    std::mutex err_mutex;
    for_each_subspace(labels, worker_count(threads), [&](Subspace s) {
        try {
            const std::size_t i = std::find(labels.begin(), labels.end(), s) - labels.begin();
            blocks[i] = assemble_block(s, ser, seqs, orbit.period);
            results[i] = eigensolve(blocks[i], orbit.period);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!err) err = std::current_exception();
        }
    });
    if (err) std::rethrow_exception(err);

    print_table(results, lowest);

    SpectrumReport rep{orbit_path, orbit.potential.alpha, N, results};
    if (!out_json.empty()) rep.results = results, report_write_json(rep, out_json);
    if (!out_csv.empty()) report_write_csv(rep, out_csv);

    if (dump_blocks)
        for (std::size_t i = 0; i < labels.size(); ++i) {
            std::string base = std::string("block_") + subspace_name(labels[i]);
            for (char& c : base)
                if (c == '+') c = 'p';
                else if (c == '-') c = 'm';
            std::ofstream mat(base + ".csv");
            const Eigen::MatrixXd& m = blocks[i].matrix;
            for (int r = 0; r < m.rows(); ++r) {
                for (int c = 0; c < m.cols(); ++c)
                    mat << (c ? "," : "") << std::setprecision(17) << m(r, c);
                mat << "\n";
            }
            nlohmann::ordered_json side;
            side["subspace"] = subspace_name(labels[i]);
            side["N"] = N;
            side["dimension"] = m.rows();
            side["orbit"] = orbit_path;
            std::ofstream(base + ".json") << side.dump(2) << "\n";
        }

    if (!dump_eigenfunction.empty()) {
        // format: label:index, e.g. cc+:0
        const auto colon = dump_eigenfunction.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--dump-eigenfunction wants LABEL:INDEX");
        const Subspace s = subspace_from_name(dump_eigenfunction.substr(0, colon));
        const int idx = std::stoi(dump_eigenfunction.substr(colon + 1));
        const auto it = std::find(labels.begin(), labels.end(), s);
        if (it == labels.end())
            throw std::invalid_argument("--dump-eigenfunction label not among computed blocks");
        const int S = 12 * N;
        const auto ef =
            reconstruct_eigenfunction(results[it - labels.begin()], seqs, orbit.period, idx, S);
        std::string base = dump_eigenfunction;
        for (char& c : base)
            if (c == '+') c = 'p';
            else if (c == '-') c = 'm';
            else if (c == ':') c = '_';
        eigenfunction_write_csv(ef, uniform_grid(orbit.period, S), "eigenfunction_" + base + ".csv");
        if (ef.partner) {
            Eigenfunction partner{*ef.partner, std::nullopt};
            eigenfunction_write_csv(partner, uniform_grid(orbit.period, S),
                                    "eigenfunction_" + base + "_partner.csv");
        }
    }
    return 0;
}

int cmd_validate(const std::string& orbit_path, int M) {
    const ChoreographyOrbit orbit = orbit_read(orbit_path);
    const double T = orbit.period;
    int failures = 0;
    auto check = [&](const char* name, bool ok, double value) {
        std::printf("%-34s %s  (%.3e)\n", name, ok ? "pass" : "FAIL", value);
        if (!ok) ++failures;
    };

    const int N = 1 << M;
    const auto seqs = build_sequences(N);
    const int S = 12 * N;
    const auto grid = uniform_grid(T, S);

    {  // projector identities and basis eigen-labels
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        SampleMatrix rnd(6, S);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < S; ++j) rnd(i, j) = U(rng);
        const auto rep = projector_check(seqs, T, S, rnd);
        check("projector idempotency", rep.max_idempotency < 1e-12, rep.max_idempotency);
        check("projector commutators", rep.max_commutator < 1e-12, rep.max_commutator);
        check("basis eigen-labels", rep.max_eigen_residual < 1e-10, rep.max_eigen_residual);
    }

    {  // basis orthonormality
        double worst = 0.0;
        std::vector<SampleMatrix> cols;
        for (Subspace lab : kNonTrivialSubspaces) {
            const int cnt = is_choreographic(lab) ? seqs.N : 2 * seqs.N;
            for (int n = 1; n <= cnt; ++n)
                for (Coord c : {Coord::X, Coord::Y})
                    cols.push_back(basis_eval(lab, seqs, n, c, grid, T).samples);
        }
        for (std::size_t i = 0; i < cols.size(); ++i)
            for (std::size_t j = i; j < cols.size(); ++j)
                worst = std::max(worst, std::abs(inner_product(cols[i], cols[j]) -
                                                 (i == j ? 1.0 : 0.0)));
        check("basis orthonormality", worst < 1e-10, worst);
    }

    const auto ser = u_series(orbit, orbit.potential, N);

    const bool homogeneous = orbit.potential.kind == PotentialKind::PowerLaw;

    {  // zc/zs block equality and zero-mode pattern
        std::vector<SpectralResult> results;
        for (Subspace lab : kNonTrivialSubspaces)
            results.push_back(eigensolve(assemble_block(lab, ser, seqs, T), T));
        const auto rep = classify(results);
        check("zc/zs double degeneracy", rep.max_zc_zs_mismatch < 1e-10, rep.max_zc_zs_mismatch);
        if (homogeneous) {
            check("zero-mode pattern (cc+, cs-)", rep.zero_mode_pattern_ok,
                  rep.zero_mode_pattern_ok ? 1.0 : 0.0);
        } else {
            // inhomogeneous potentials can carry genuine soft modes in other
            // blocks; only the conservation-law zeros are required
            double worst = 0.0;
            for (const auto& r : results)
                if (r.label == Subspace::CCplus || r.label == Subspace::CSminus)
                    worst = std::max(worst, r.lambda_tilde.cwiseAbs().minCoeff());
            check("conservation zero modes (cc+, cs-)", worst < 1e-4, worst);
        }
    }

    {  // full-basis oracle union at N=4 (fixed small size)
        const auto s4 = build_sequences(4);
        const auto ser4 = u_series(orbit, orbit.potential, 4);
        const Eigen::VectorXd full =
            lapack::eigenvalues_only(assemble_full_oracle(orbit, orbit.potential, 4));
        std::vector<double> uni;
        const auto triv = assemble_block(Subspace::Trivial, ser4, s4, T);
        for (int k = 0; k < triv.matrix.rows(); ++k)
            for (int c = 0; c < (k == 0 ? 2 : 4); ++c) uni.push_back(triv.matrix(k, k));
        for (Subspace lab : kNonTrivialSubspaces) {
            const Eigen::MatrixXd m = is_zero_choreographic(lab)
                                          ? assemble_block_extended(lab, ser4, s4, T).matrix
                                          : assemble_block(lab, ser4, s4, T).matrix;
            const Eigen::VectorXd ev = lapack::eigenvalues_only(m);
            uni.insert(uni.end(), ev.data(), ev.data() + ev.size());
        }
        std::sort(uni.begin(), uni.end());
        double worst = 1e300;
        if (static_cast<std::size_t>(full.size()) == uni.size()) {
            worst = 0.0;
            for (int i = 0; i < full.size(); ++i)
                worst = std::max(worst, std::abs(full(i) - uni[i]) /
                                            std::max(1.0, std::abs(uni[i])));
        }
        check("full-oracle spectrum union", worst < 1e-8, worst);
    }

    if (homogeneous) {  // scale invariance of lambda~ under T -> 2T re-solve
        try {
            ChoreographyOrbit seed = orbit;
            seed.period = 2.0 * T;
            const double s = std::pow(2.0, 2.0 / (2.0 + orbit.potential.alpha));
            for (double& c : seed.ax) c *= s;
            for (double& c : seed.ay) c *= s;
            const ChoreographyOrbit o2 = find_figure_eight(orbit.potential, 2.0 * T,
                                                           orbit.cutoff, seed, 1e-10, 200);
            const auto ser2 = u_series(o2, o2.potential, N);
            double worst = 0.0;
            for (Subspace lab : {Subspace::CCplus, Subspace::ZCminus}) {
                const auto r1 = eigensolve(assemble_block(lab, ser, seqs, T), T);
                const auto r2 = eigensolve(assemble_block(lab, ser2, seqs, 2.0 * T), 2.0 * T);
                worst = std::max(worst,
                                 (r1.lambda_tilde - r2.lambda_tilde).cwiseAbs().maxCoeff());
            }
            check("scale invariance (T -> 2T)", worst < 1e-6, worst);
        } catch (const SolveFailure&) {
            check("scale invariance (T -> 2T)", false, -1.0);
        }
    }

    std::printf("%s\n", failures == 0 ? "all checks passed" : "validation FAILED");
    return failures == 0 ? 0 : 1;
}

int cmd_oracle(const std::string& orbit_path, int M, const std::string& mode, int samples,
               bool force, const std::string& out_json, int lowest) {
    const ChoreographyOrbit orbit = orbit_read(orbit_path);
    const double T = orbit.period;
    const int N = 1 << M;
    if (!force && N > 32)
        throw std::invalid_argument("oracle: N = 2^M > 32 is expensive; pass --force to allow");
    if (!force && samples > 2048)
        throw std::invalid_argument("oracle: samples > 2048 is expensive; pass --force to allow");

    nlohmann::ordered_json out;
    out["orbit"] = orbit_path;
    const double nu2 = std::pow(2.0 * std::numbers::pi / T, 2);

    if (mode == "full" || mode == "union") {
        const Eigen::VectorXd full =
            lapack::eigenvalues_only(assemble_full_oracle(orbit, orbit.potential, N, 0, 12));
        std::printf("full-basis oracle: dim %ld, lowest %d lambda~:\n", (long)full.size(), lowest);
        for (int i = 0; i < std::min<int>(lowest, full.size()); ++i)
            std::printf("  %12.6g\n", full(i) / nu2);
        out["full_lambda_tilde"] =
            std::vector<double>(full.data(), full.data() + full.size());
        for (auto& v : out["full_lambda_tilde"]) v = v.get<double>() / nu2;

        if (mode == "union") {
            const auto seqs = build_sequences(N);
            const auto ser = u_series(orbit, orbit.potential, N);
            std::vector<double> uni;
            const auto triv = assemble_block(Subspace::Trivial, ser, seqs, T);
            for (int k = 0; k < triv.matrix.rows(); ++k)
                for (int c = 0; c < (k == 0 ? 2 : 4); ++c) uni.push_back(triv.matrix(k, k));
            for (Subspace lab : kNonTrivialSubspaces) {
                const Eigen::MatrixXd m =
                    is_zero_choreographic(lab)
                        ? assemble_block_extended(lab, ser, seqs, T).matrix
                        : assemble_block(lab, ser, seqs, T).matrix;
                const Eigen::VectorXd ev = lapack::eigenvalues_only(m);
                uni.insert(uni.end(), ev.data(), ev.data() + ev.size());
            }
            std::sort(uni.begin(), uni.end());
            double worst = -1.0;
            if (static_cast<std::size_t>(full.size()) == uni.size()) {
                worst = 0.0;
                for (int i = 0; i < full.size(); ++i)
                    worst = std::max(worst, std::abs(full(i) - uni[i]) /
                                                std::max(1.0, std::abs(uni[i])));
            }
            std::printf("block-union vs full oracle: dims %zu / %ld, max rel deviation %.3e\n",
                        uni.size(), (long)full.size(), worst);
            out["union_max_rel_deviation"] = worst;
        }
    }

    if (mode == "timedomain") {
        const auto op = assemble_timedomain_oracle(orbit, orbit.potential, samples);
        const Eigen::VectorXd ev = lapack::generalized_eigenvalues(op.A, op.B);
        std::printf("time-domain oracle: S=%d, lowest %d lambda~:\n", samples, lowest);
        for (int i = 0; i < std::min<int>(lowest, ev.size()); ++i)
            std::printf("  %12.6g\n", ev(i) / nu2);
        std::vector<double> lam(ev.data(), ev.data() + std::min<int>(4 * lowest, ev.size()));
        for (double& v : lam) v /= nu2;
        out["timedomain_lambda_tilde"] = lam;
    }

    if (!out_json.empty()) std::ofstream(out_json) << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"figure-eight choreography action-Hessian toolkit"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "find the figure-eight orbit");
    PotentialFlags solve_pot;
    solve_pot.attach(solve);
    double period = 0.0;
    int cutoff = 32, max_iter = 500;
    double tol = 1e-10;
    std::string seed_path, solve_out = "eight.json";
    solve->add_option("--period", period, "orbit period T")->required();
    solve->add_option("--cutoff", cutoff, "Fourier cutoff of the orbit ansatz");
    solve->add_option("--tol", tol, "max |dS/da| at convergence");
    solve->add_option("--max-iter", max_iter, "iteration budget");
    solve->add_option("--seed-orbit", seed_path, "warm-start orbit file");
    solve->add_option("--out", solve_out, "output orbit file");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "per-subspace Hessian spectra");
    std::string sp_orbit, sp_json, sp_csv, sp_sub, sp_eigfn;
    int sp_M = 7, sp_threads = 0, sp_lowest = 5;
    bool sp_dump_blocks = false, sp_paper = false;
    spectrum->add_option("--orbit", sp_orbit, "orbit file")->required();
    spectrum->add_option("--M", sp_M, "truncation exponent, N = 2^M (0..12)")
        ->check(CLI::Range(0, 12));
    spectrum->add_flag("--paper-table", sp_paper, "preset M=9 for the reference table");
    spectrum->add_option("--out", sp_json, "JSON report path");
    spectrum->add_option("--csv", sp_csv, "CSV report path");
    spectrum->add_option("--subspace", sp_sub, "restrict to one block (e.g. cs+)");
    spectrum->add_flag("--dump-blocks", sp_dump_blocks, "write block matrices + sidecars");
    spectrum->add_option("--dump-eigenfunction", sp_eigfn,
                         "write one eigenfunction CSV, LABEL:INDEX");
    spectrum->add_option("--threads", sp_threads, "worker count (default CHOREO_THREADS/cores)");
    spectrum->add_option("--lowest", sp_lowest, "rows of the printed table");

    // validate
    auto* validate = app.add_subcommand("validate", "internal consistency suites");
    std::string va_orbit;
    int va_M = 4;
    validate->add_option("--orbit", va_orbit, "orbit file")->required();
    validate->add_option("--M", va_M, "truncation exponent for the suites")
        ->check(CLI::Range(0, 12));

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force reference spectra");
    std::string or_orbit, or_mode = "union", or_json;
    int or_M = 2, or_samples = 512, or_lowest = 10;
    bool or_force = false;
    oracle->add_option("--orbit", or_orbit, "orbit file")->required();
    oracle->add_option("--M", or_M, "truncation exponent, N = 2^M")->check(CLI::Range(0, 12));
    oracle->add_option("--mode", or_mode, "full | timedomain | union")
        ->check(CLI::IsMember({"full", "timedomain", "union"}));
    oracle->add_option("--samples", or_samples, "time-domain grid size (multiple of 6)");
    oracle->add_flag("--force", or_force, "lift the size guards");
    oracle->add_option("--out", or_json, "JSON output path");
    oracle->add_option("--lowest", or_lowest, "rows printed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve) return cmd_solve(solve_pot, period, cutoff, tol, max_iter, seed_path, solve_out);
        if (*spectrum)
            return cmd_spectrum(sp_orbit, sp_paper ? 9 : sp_M, sp_json, sp_csv, sp_sub,
                                sp_dump_blocks, sp_eigfn, sp_threads, sp_lowest);
        if (*validate) return cmd_validate(va_orbit, va_M);
        if (*oracle)
            return cmd_oracle(or_orbit, or_M, or_mode, or_samples, or_force, or_json, or_lowest);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}

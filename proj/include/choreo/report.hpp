#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "choreo/spectra.hpp"

namespace choreo {

// Spectrum report for a set of blocks, JSON and CSV flavours.
struct SpectrumReport {
    std::string orbit_ref;
    double alpha = 0.0;
    int N = 0;
    std::vector<SpectralResult> results;
};

inline nlohmann::ordered_json report_to_json(const SpectrumReport& rep) {
    nlohmann::ordered_json j;
    j["orbit"] = rep.orbit_ref;
    j["alpha"] = rep.alpha;
    j["N"] = rep.N;
    nlohmann::ordered_json subs;
    for (const auto& r : rep.results) {
        nlohmann::ordered_json entry;
        entry["lambda_tilde"] = std::vector<double>(
            r.lambda_tilde.data(), r.lambda_tilde.data() + r.lambda_tilde.size());
        entry["zero_modes"] = r.zero_modes;
        subs[subspace_name(r.label)] = entry;
    }
    j["subspaces"] = subs;
    return j;
}

inline void report_write_json(const SpectrumReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("report_write_json: cannot open " + path);
    out << report_to_json(rep).dump(2) << "\n";
}

inline void report_write_csv(const SpectrumReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("report_write_csv: cannot open " + path);
    out << "subspace,index,lambda_tilde\n";
    char buf[64];
    for (const auto& r : rep.results)
        for (int i = 0; i < r.lambda_tilde.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", r.lambda_tilde(i));
            out << subspace_name(r.label) << "," << i << "," << buf << "\n";
        }
}

inline void eigenfunction_write_csv(const Eigenfunction& ef, const std::vector<double>& times,
                                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("eigenfunction_write_csv: cannot open " + path);
    out << "t,dq0x,dq0y,dq1x,dq1y,dq2x,dq2y\n";
    char buf[64];
    for (int s = 0; s < static_cast<int>(times.size()); ++s) {
        std::snprintf(buf, sizeof(buf), "%.17g", times[s]);
        out << buf;
        for (int c = 0; c < 6; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", ef.samples(c, s));
            out << "," << buf;
        }
        out << "\n";
    }
}

}  // namespace choreo

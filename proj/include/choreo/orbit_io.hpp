#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "choreo/orbit.hpp"
#include "choreo/sequences.hpp"

namespace choreo {

struct OrbitParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrbitValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// n index (1-based) of a harmonic within k^o or k^e, or 0 if absent
inline int harmonic_slot(int k, bool odd_family) {
    if (k <= 0 || k % 3 == 0) return 0;
    if (odd_family != (k % 2 == 1)) return 0;
    // invert k^o_n = (6n + (-1)^n - 3)/2, k^e_n = (6n - (-1)^n - 3)/2: n ~ (2k+3)/6
    for (int n = std::max(1, (2 * k + 3) / 6 - 1); n <= (2 * k + 3) / 6 + 1; ++n)
        if ((odd_family ? seq::k_odd(n) : seq::k_even(n)) == k) return n;
    return 0;
}

}  // namespace detail

inline nlohmann::ordered_json orbit_to_json(const ChoreographyOrbit& o) {
    nlohmann::ordered_json j;
    j["format"] = "choreo-orbit/1";
    j["period"] = o.period;
    nlohmann::ordered_json pot;
    if (o.potential.kind == PotentialKind::PowerLaw) {
        pot["kind"] = "power_law";
        pot["alpha"] = o.potential.alpha;
        pot["g2"] = o.potential.g2;
    } else {
        pot["kind"] = "lennard_jones";
        pot["alpha"] = o.potential.alpha;
        pot["beta"] = o.potential.beta;
        pot["a"] = o.potential.a;
        pot["b"] = o.potential.b;
    }
    j["potential"] = pot;
    auto coeffs = [](const std::vector<double>& c, bool odd) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (int n = 1; n <= static_cast<int>(c.size()); ++n)
            arr.push_back({odd ? seq::k_odd(n) : seq::k_even(n), c[n - 1]});
        return arr;
    };
    j["ax"] = coeffs(o.ax, true);
    j["ay"] = coeffs(o.ay, false);
    j["residual"] = o.residual;
    return j;
}

inline void orbit_write(const ChoreographyOrbit& o, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("orbit_write: cannot open " + path);
    out << orbit_to_json(o).dump(2) << "\n";
}

inline ChoreographyOrbit orbit_from_json(const nlohmann::json& j) {
    using nlohmann::json;
    auto require = [&](const char* field) -> const json& {
        if (!j.contains(field))
            throw OrbitParseError(std::string("orbit file: missing field '") + field + "'");
        return j.at(field);
    };
    if (require("format").get<std::string>() != "choreo-orbit/1")
        throw OrbitParseError("orbit file: unsupported format tag");
    ChoreographyOrbit o;
    o.period = require("period").get<double>();
    if (!(o.period > 0.0)) throw OrbitValidationError("orbit file: period must be positive");

    const json& pot = require("potential");
    const std::string kind = pot.at("kind").get<std::string>();
    if (kind == "power_law") {
        o.potential = PotentialSpec::power_law(pot.at("alpha").get<double>(),
                                               pot.value("g2", 1.0));
    } else if (kind == "lennard_jones") {
        o.potential = PotentialSpec::lennard_jones(pot.at("a").get<double>(),
                                                   pot.at("alpha").get<double>(),
                                                   pot.at("b").get<double>(),
                                                   pot.at("beta").get<double>());
    } else {
        throw OrbitParseError("orbit file: unknown potential kind '" + kind + "'");
    }

    std::map<int, double> ax_map, ay_map;
    auto read_coeffs = [&](const char* field, bool odd, std::map<int, double>& dst) {
        for (const auto& entry : require(field)) {
            if (!entry.is_array() || entry.size() != 2)
                throw OrbitParseError(std::string("orbit file: '") + field +
                                      "' entries must be [harmonic, value] pairs");
            const int k = entry[0].get<int>();
            if (detail::harmonic_slot(k, odd) == 0)
                throw OrbitValidationError(std::string("orbit file: '") + field +
                                           "' harmonic " + std::to_string(k) +
                                           " is outside the symmetry class");
            dst[k] = entry[1].get<double>();
        }
    };
    read_coeffs("ax", true, ax_map);
    read_coeffs("ay", false, ay_map);

    int Nq = 1;
    for (const auto& [k, v] : ax_map) Nq = std::max(Nq, detail::harmonic_slot(k, true));
    for (const auto& [k, v] : ay_map) Nq = std::max(Nq, detail::harmonic_slot(k, false));
    o.cutoff = Nq;
    o.ax.assign(Nq, 0.0);
    o.ay.assign(Nq, 0.0);
    for (const auto& [k, v] : ax_map) o.ax[detail::harmonic_slot(k, true) - 1] = v;
    for (const auto& [k, v] : ay_map) o.ay[detail::harmonic_slot(k, false) - 1] = v;
    o.residual = j.value("residual", std::numeric_limits<double>::infinity());
    return o;
}

inline ChoreographyOrbit orbit_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("orbit_read: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw OrbitParseError("orbit file '" + path + "': " + e.what());
    }
    return orbit_from_json(j);
}

}  // namespace choreo

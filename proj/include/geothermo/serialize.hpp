// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// serialize.hpp: JSON encodings of the library's value types.

#pragma once

#include "geothermo/divergence.hpp"
#include "geothermo/geometry.hpp"
#include "geothermo/spectral_core.hpp"
#include "geothermo/thermo.hpp"

#include <json.hpp>

#include <cmath>

namespace geothermo {

using json = nlohmann::json;

// {"levels": [[E, mult], ...]}
inline json spectrum_to_json(const Spectrum& s) {
    json levels = json::array();
    for (const auto& l : s.levels()) levels.push_back(json::array({l.energy, l.multiplicity}));
    return json{{"levels", std::move(levels)}};
}

inline Spectrum spectrum_from_json(const json& j) {
    if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array()) {
        fail(ErrorKind::InvalidSpectrum, "expected {\"levels\": [[E, mult], ...]}");
    }
    std::vector<Level> levels;
    for (const auto& entry : j["levels"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number_integer()) {
            fail(ErrorKind::InvalidSpectrum, "each level must be [energy, multiplicity]");
        }
        if (entry[1].get<std::int64_t>() < 1) fail(ErrorKind::InvalidSpectrum, "multiplicity must be >= 1");
        levels.push_back({entry[0].get<double>(), entry[1].get<std::uint64_t>()});
    }
    return Spectrum(std::move(levels));
}

inline void to_json(json& j, const GeometrySummary& g) {
    j = json{{"root_fidelity", g.root_fidelity},
             {"bures_distance", g.bures_distance},
             {"bures_angle", g.bures_angle},
             {"cos_dW", g.cos_dW},
             {"s_half", g.s_half}};
}

inline void from_json(const json& j, GeometrySummary& g) {
    j.at("root_fidelity").get_to(g.root_fidelity);
    j.at("bures_distance").get_to(g.bures_distance);
    j.at("bures_angle").get_to(g.bures_angle);
    j.at("cos_dW").get_to(g.cos_dW);
    if (j.contains("s_half")) j.at("s_half").get_to(g.s_half);
}

// Infinite divergences are written as the string "inf".
inline void to_json(json& j, const DivergenceValue& d) {
    j = json{{"alpha", d.alpha}};
    if (d.is_infinite()) {
        j["value"] = "inf";
    } else {
        j["value"] = d.value;
    }
}

inline void from_json(const json& j, DivergenceValue& d) {
    j.at("alpha").get_to(d.alpha);
    const auto& v = j.at("value");
    d.value = v.is_string() ? kInfinity : v.get<double>();
}

inline void to_json(json& j, const EnsembleSummary& e) {
    j = json{{"N", e.n},
             {"T", e.temperature},
             {"Z", e.z},
             {"Zprime", e.z_prime},
             {"U", e.internal_energy},
             {"S_th", e.thermal_entropy},
             {"omega", e.omega},
             {"omega_prime", e.omega_prime},
             {"s_half", e.s_half}};
}

} // namespace geothermo

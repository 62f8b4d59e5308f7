// Copyright 2026 The iontk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iontk/common.hpp"

namespace iontk::species {

// Fixed by convention so that an electron (g = 2) spin-1/2 pair splits at
// exactly 28 MHz/mT. Deliberately the rounded textbook value, not CODATA.
inline constexpr double kBohrMagnetonMHzPerMT = 14.0;
inline constexpr double kElectronZeemanMHzPerMT = 28.0;

struct OpticalQubitData {
    double lambda_d52_nm = 0;    // S_1/2 -> D_5/2 transition wavelength
    double d52_lifetime_s = 0;   // D_5/2 level lifetime
    double branching_ratio = 0;  // f, P->S / P->D spontaneous decay

    bool operator==(const OpticalQubitData&) const = default;
};

// Atomic-constants record. Hyperfine fields are absent for I = 0 entries and
// for optical-only rows; the optical block is absent for hyperfine rows.
struct IonSpecies {
    std::string name;
    double nuclear_spin = 0;  // I, non-negative multiple of 1/2
    std::optional<double> p12_linewidth_mhz;       // gamma/2pi of the P_1/2 level
    std::optional<double> hyperfine_splitting_ghz; // Delta_hf of the S_1/2 level
    std::optional<double> lambda12_nm;             // S_1/2 -> P_1/2
    std::optional<double> lambda32_nm;             // S_1/2 -> P_3/2
    std::optional<OpticalQubitData> optical;

    bool operator==(const IonSpecies&) const = default;

    void validate() const {
        const double twice = 2 * nuclear_spin;
        if (nuclear_spin < 0 || std::abs(twice - std::round(twice)) > 1e-12) {
            throw ValidationError(name + ": nuclear spin must be a non-negative multiple of 1/2");
        }
        for (const auto& v : {p12_linewidth_mhz, hyperfine_splitting_ghz, lambda12_nm,
                              lambda32_nm}) {
            if (v && *v <= 0) throw ValidationError(name + ": non-positive constant");
        }
        if (optical) {
            if (optical->lambda_d52_nm <= 0 || optical->d52_lifetime_s <= 0) {
                throw ValidationError(name + ": non-positive optical constant");
            }
            if (optical->branching_ratio <= 0 || optical->branching_ratio >= 1) {
                throw ValidationError(name + ": branching ratio outside (0, 1)");
            }
        }
    }
};

// The hyperfine-qubit and optical-qubit constants tables. Shipped identically
// in data/species.json; the file is the auditable copy, this table serves the
// library without file I/O. Branching ratios are the exact double quotients.
inline const std::vector<IonSpecies>& builtin_species() {
    static const std::vector<IonSpecies> table = [] {
        auto hf = [](const char* name, double spin, double gamma, double dhf, double l12,
                     double l32) {
            IonSpecies s;
            s.name = name;
            s.nuclear_spin = spin;
            s.p12_linewidth_mhz = gamma;
            s.hyperfine_splitting_ghz = dhf;
            s.lambda12_nm = l12;
            s.lambda32_nm = l32;
            return s;
        };
        auto opt = [](const char* name, double lam, double tau, double f) {
            IonSpecies s;
            s.name = name;
            s.nuclear_spin = 0;  // the optical-qubit workhorses are even (I = 0) isotopes
            s.optical = OpticalQubitData{lam, tau, f};
            return s;
        };
        std::vector<IonSpecies> t = {
            hf("9Be+", 1.5, 19.6, 1.25, 313.1, 313.0),
            hf("25Mg+", 2.5, 41.3, 1.79, 280.3, 279.6),
            hf("43Ca+", 3.5, 22.5, 3.23, 396.8, 393.4),
            hf("67Zn+", 2.5, 62.2, 7.2, 206.2, 202.5),
            hf("87Sr+", 4.5, 21.5, 5.00, 421.6, 407.8),
            hf("111Cd+", 0.5, 50.5, 14.53, 226.5, 214.4),
            hf("137Ba+", 1.5, 20.1, 8.04, 493.4, 455.4),
            hf("171Yb+", 0.5, 19.7, 12.64, 369.4, 328.9),
            hf("199Hg+", 0.5, 54.7, 40.51, 194.2, 165.0),
            opt("Ca+", 729.1, 1.17, 1.0 / 17.0),
            opt("Sr+", 674.0, 0.36, 1.0 / 14.0),
            opt("Ba+", 1761.7, 30.0, 1.0 / 3.0),
            opt("Yb+", 411.0, 0.007, 1.0 / 290.0),
            opt("Hg+", 281.6, 0.1, 1.0 / 700.0),
        };
        for (const auto& s : t) s.validate();
        return t;
    }();
    return table;
}

inline const IonSpecies& lookup(const std::string& name) {
    for (const auto& s : builtin_species()) {
        if (s.name == name) return s;
    }
    std::string known;
    for (const auto& s : builtin_species()) {
        known += (known.empty() ? "" : ", ") + s.name;
    }
    throw ValidationError("unknown species '" + name + "'; available: " + known);
}

// Zeeman qubit level separation g_s mu_B B, in MHz, for field B in mT.
inline double zeeman_splitting_mhz(double b_mt) {
    if (b_mt < 0) throw ValidationError("zeeman_splitting: negative magnetic field");
    return kElectronZeemanMHzPerMT * b_mt;
}

// Ground-state hyperfine constant A_hf = Delta_hf / (I + 1/2), in GHz.
inline double hyperfine_constant_ghz(const IonSpecies& s) {
    if (s.nuclear_spin == 0) {
        throw ValidationError(s.name + ": hyperfine constant undefined for I = 0");
    }
    if (!s.hyperfine_splitting_ghz) {
        throw ValidationError(s.name + ": no hyperfine splitting on record");
    }
    return *s.hyperfine_splitting_ghz / (s.nuclear_spin + 0.5);
}

// Low-field Zeeman shift g_F mu_B B m_F, in MHz. Odd in m_F; zero for the
// m_F = 0 clock states.
inline double zeeman_shift_low_field_mhz(double g_f, double b_mt, double m_f) {
    return g_f * kBohrMagnetonMHzPerMT * b_mt * m_f;
}

// -- species.json ------------------------------------------------------------
// Schema: a bare array of records; absent fields mean "not on record".

inline IonSpecies species_from_json(const nlohmann::json& j) {
    IonSpecies s;
    s.name = j.at("name").get<std::string>();
    s.nuclear_spin = j.at("nuclearSpin").get<double>();
    if (j.contains("p12LinewidthMHz")) s.p12_linewidth_mhz = j["p12LinewidthMHz"].get<double>();
    if (j.contains("hyperfineSplittingGHz")) {
        s.hyperfine_splitting_ghz = j["hyperfineSplittingGHz"].get<double>();
    }
    if (j.contains("lambda12Nm")) s.lambda12_nm = j["lambda12Nm"].get<double>();
    if (j.contains("lambda32Nm")) s.lambda32_nm = j["lambda32Nm"].get<double>();
    if (j.contains("optical")) {
        const auto& o = j["optical"];
        s.optical = OpticalQubitData{o.at("lambdaD52Nm").get<double>(),
                                     o.at("d52LifetimeS").get<double>(),
                                     o.at("branchingRatio").get<double>()};
    }
    s.validate();
    return s;
}

inline nlohmann::ordered_json species_to_json(const IonSpecies& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["nuclearSpin"] = s.nuclear_spin;
    if (s.p12_linewidth_mhz) j["p12LinewidthMHz"] = *s.p12_linewidth_mhz;
    if (s.hyperfine_splitting_ghz) j["hyperfineSplittingGHz"] = *s.hyperfine_splitting_ghz;
    if (s.lambda12_nm) j["lambda12Nm"] = *s.lambda12_nm;
    if (s.lambda32_nm) j["lambda32Nm"] = *s.lambda32_nm;
    if (s.optical) {
        j["optical"] = {{"lambdaD52Nm", s.optical->lambda_d52_nm},
                        {"d52LifetimeS", s.optical->d52_lifetime_s},
                        {"branchingRatio", s.optical->branching_ratio}};
    }
    return j;
}

inline std::vector<IonSpecies> load_species_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open species file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_array()) throw ValidationError("species file: expected a top-level array");
    std::vector<IonSpecies> out;
    out.reserve(doc.size());
    for (const auto& j : doc) out.push_back(species_from_json(j));
    return out;
}

}  // namespace iontk::species

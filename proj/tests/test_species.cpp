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

#include <catch2/catch_amalgamated.hpp>

#include "iontk/species.hpp"

using namespace iontk;
using Catch::Approx;

TEST_CASE("lookup returns the tabulated constants") {
    const auto& yb = species::lookup("171Yb+");
    REQUIRE(yb.nuclear_spin == 0.5);
    REQUIRE(yb.hyperfine_splitting_ghz == 12.64);
    REQUIRE(yb.lambda12_nm == 369.4);
    REQUIRE(yb.lambda32_nm == 328.9);
    REQUIRE_FALSE(yb.optical.has_value());

    const auto& ca = species::lookup("Ca+");
    REQUIRE(ca.optical.has_value());
    REQUIRE(ca.optical->lambda_d52_nm == 729.1);
    REQUIRE(ca.optical->d52_lifetime_s == 1.17);
    REQUIRE(ca.optical->branching_ratio == 1.0 / 17.0);

    const auto& be = species::lookup("9Be+");
    REQUIRE(be.nuclear_spin == 1.5);
    REQUIRE(be.p12_linewidth_mhz == 19.6);
    REQUIRE(be.hyperfine_splitting_ghz == 1.25);
}

TEST_CASE("table has all nine hyperfine and five optical rows") {
    int hyperfine = 0, optical = 0;
    for (const auto& s : species::builtin_species()) {
        if (s.hyperfine_splitting_ghz) ++hyperfine;
        if (s.optical) ++optical;
    }
    REQUIRE(hyperfine == 9);
    REQUIRE(optical == 5);
}

TEST_CASE("unknown species error lists available names") {
    try {
        species::lookup("3He+");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        REQUIRE(msg.find("171Yb+") != std::string::npos);
        REQUIRE(msg.find("Ca+") != std::string::npos);
    }
}

TEST_CASE("zeeman splitting") {
    REQUIRE(species::zeeman_splitting_mhz(0) == 0.0);
    REQUIRE(species::zeeman_splitting_mhz(1.0) == 28.0);
    REQUIRE(species::zeeman_splitting_mhz(0.5) == 14.0);
    REQUIRE_THROWS_AS(species::zeeman_splitting_mhz(-0.1), ValidationError);
    // linearity to machine precision
    for (double a : {0.3, 2.0, 7.5}) {
        REQUIRE(species::zeeman_splitting_mhz(a * 1.3) ==
                Approx(a * species::zeeman_splitting_mhz(1.3)).epsilon(1e-15));
    }
}

TEST_CASE("hyperfine constant") {
    const auto& yb = species::lookup("171Yb+");
    REQUIRE(species::hyperfine_constant_ghz(yb) == Approx(12.64).epsilon(1e-15));
    REQUIRE(species::hyperfine_constant_ghz(species::lookup("9Be+")) ==
            Approx(0.625).epsilon(1e-15));
    REQUIRE(species::hyperfine_constant_ghz(species::lookup("43Ca+")) ==
            Approx(0.8075).epsilon(1e-15));
    REQUIRE_THROWS_AS(species::hyperfine_constant_ghz(species::lookup("Ca+")), ValidationError);
}

TEST_CASE("hyperfine splitting round-trips through the constant") {
    for (const auto& s : species::builtin_species()) {
        if (!s.hyperfine_splitting_ghz) continue;
        const double a_hf = species::hyperfine_constant_ghz(s);
        // divide-multiply round trip is exact up to one rounding step
        REQUIRE(a_hf * (s.nuclear_spin + 0.5) ==
                Approx(*s.hyperfine_splitting_ghz).epsilon(1e-15));
    }
}

TEST_CASE("low-field zeeman shift") {
    REQUIRE(species::zeeman_shift_low_field_mhz(0.7, 2.0, 0.0) == 0.0);
    REQUIRE(species::zeeman_shift_low_field_mhz(2.0, 1.0, 0.5) == 14.0);
    for (double mf : {0.5, 1.5, 2.5}) {
        REQUIRE(species::zeeman_shift_low_field_mhz(1.2, 0.8, mf) ==
                -species::zeeman_shift_low_field_mhz(1.2, 0.8, -mf));
    }
}

TEST_CASE("shipped data file matches the embedded table bit for bit") {
    const auto from_file = species::load_species_file(std::string(IONTK_SOURCE_DIR) +
                                                      "/data/species.json");
    const auto& embedded = species::builtin_species();
    REQUIRE(from_file.size() == embedded.size());
    for (std::size_t i = 0; i < embedded.size(); ++i) {
        REQUIRE(from_file[i] == embedded[i]);
    }
}

TEST_CASE("records round-trip through JSON") {
    for (const auto& s : species::builtin_species()) {
        REQUIRE(species::species_from_json(species::species_to_json(s)) == s);
    }
}

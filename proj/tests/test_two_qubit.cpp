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

#include <cmath>

#include "iontk/two_qubit.hpp"

using namespace iontk;
using namespace iontk::twoqubit;
using Catch::Approx;

namespace {

StateVector spin_basis(int index) {
    StateVector v = StateVector::Zero(4);
    v(index) = 1;
    return v;
}

ComplexMatrix sigma_zz() {
    Eigen::Vector4cd d;
    d << 1, -1, -1, 1;
    return d.asDiagonal();
}

}  // namespace

TEST_CASE("normal modes") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    REQUIRE(std::abs(modes.st_frequency / modes.cm_frequency - std::sqrt(3.0)) < 1e-12);
    REQUIRE(modes.cm_width == 1.0);
    REQUIRE(modes.st_width == Approx(std::pow(3.0, -0.25)).margin(1e-14));
    REQUIRE(modes.stretch_signs[0] == -modes.stretch_signs[1]);

    // cm mode sums forces, st mode takes the difference
    REQUIRE(mode_drive_force(0.3, 0.5, Mode::CenterOfMass) ==
            Approx(0.8 / std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(mode_drive_force(0.3, 0.5, Mode::Stretch) ==
            Approx(-0.2 / std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(mode_drive_force(0.7, 0.7, Mode::Stretch) == 0.0);  // exact cancellation
    REQUIRE_THROWS_AS(normal_modes(0.0, 1.0), ValidationError);
}

TEST_CASE("cnot moves the amplitudes as printed") {
    Eigen::Vector4cd in;
    in << Complex(0.1, 0.2), Complex(0.3, -0.1), Complex(0.5, 0.0), Complex(0.2, 0.6);
    const Eigen::Vector4cd out = cnot() * in;
    REQUIRE(out(0) == in(0));
    REQUIRE(out(1) == in(1));
    REQUIRE(out(2) == in(3));
    REQUIRE(out(3) == in(2));
    REQUIRE((cnot() * cnot() - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("toffoli rotates the target only in the up-up control sector") {
    ComplexMatrix sx(2, 2);
    sx << 0, 1, 1, 0;
    const ComplexMatrix t = toffoli(sx);
    StateVector psi = StateVector::Zero(8);
    psi(0) = 0.6;  // |uu> x |up>
    psi(1) = 0.8;  // |uu> x |down>
    const StateVector out = t * psi;
    REQUIRE(std::abs(out(0) - Complex(0.8, 0)) < 1e-15);
    REQUIRE(std::abs(out(1) - Complex(0.6, 0)) < 1e-15);
    for (int sector = 1; sector < 4; ++sector) {
        StateVector other = StateVector::Zero(8);
        other(2 * sector) = 1;
        REQUIRE((t * other - other).cwiseAbs().maxCoeff() == 0);
    }
    REQUIRE_THROWS_AS(toffoli(ComplexMatrix::Zero(2, 2)), ValidationError);
}

TEST_CASE("toffoli with a generic rotation stays block structured") {
    const ComplexMatrix r = spin_motion::rotation(0.3, 1.1, 0.7);
    const ComplexMatrix t = toffoli(r);
    REQUIRE(linalg::unitarity_defect(t) < 1e-12);
    REQUIRE((t.block(0, 0, 2, 2) - r).cwiseAbs().maxCoeff() == 0);
    REQUIRE((t.block(2, 2, 6, 6) - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0);
    REQUIRE(t.block(0, 2, 2, 6).cwiseAbs().maxCoeff() == 0);
    REQUIRE(t.block(2, 0, 6, 2).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("light-shift force pattern") {
    // F = (k/2)(Delta_+ - Delta_-) per level; equal shifts give no force
    const double k = 2.0;
    const ForcePattern pattern = force_pattern_from_light_shifts(0.9, 0.1, 0.3, 0.7, k);
    REQUIRE(pattern.force_up == Approx(0.8).margin(1e-15));
    REQUIRE(pattern.force_down == Approx(-0.4).margin(1e-15));
    REQUIRE(force_pattern_from_light_shifts(0.5, 0.5, 0.2, 0.2, k).force_up == 0.0);
    REQUIRE(pattern.force(false) == pattern.force_up);
    REQUIRE(pattern.force(true) == pattern.force_down);
}

TEST_CASE("hadamard variants") {
    ComplexMatrix expected_composed(2, 2);
    const double r = 1 / std::sqrt(2.0);
    expected_composed << -r, r, r, r;
    REQUIRE((hadamard_from_rotations() - expected_composed).cwiseAbs().maxCoeff() < 1e-12);

    ComplexMatrix expected_standard(2, 2);
    expected_standard << r, r, r, -r;
    REQUIRE((hadamard_standard() - expected_standard).cwiseAbs().maxCoeff() == 0);

    const ComplexMatrix h2 = hadamard_standard() * hadamard_standard();
    REQUIRE((h2 - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("hadamard sandwich identities") {
    const ComplexMatrix hs = linalg::kron(ComplexMatrix::Identity(2, 2), hadamard_standard());
    REQUIRE((hs * cnot() * hs - phase_gate_pi()).cwiseAbs().maxCoeff() < 1e-15);
    // and the inversion: sandwiching the phase gate recovers the CNOT
    REQUIRE((hs * phase_gate_pi() * hs - cnot()).cwiseAbs().maxCoeff() < 1e-15);

    // the verbatim composition instead lands on diag(1,1,-1,1)
    const auto report = basis_change_check();
    Eigen::Vector4cd flipped;
    flipped << 1, 1, -1, 1;
    REQUIRE((report.rotation_hadamard_sandwich - ComplexMatrix(flipped.asDiagonal()))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    REQUIRE(report.rotation_hadamard_deviation > 1.0);       // the documented discrepancy
    REQUIRE(report.hadamard_standard_deviation < 1e-15);  // the stated identity
}

TEST_CASE("pi/2 phase gate product identity") {
    const ComplexMatrix rz = spin_motion::rotation(kPi / 2, 0, kPi / 2);
    const ComplexMatrix product = linalg::kron(rz, rz) * phase_gate_pi();
    REQUIRE((product - phase_gate_pi_half()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sm gate identities") {
    const ComplexMatrix u = sm_gate();
    REQUIRE(linalg::unitarity_defect(u) < 1e-12);
    REQUIRE(std::norm(u(0, 3)) == Approx(0.5).margin(1e-15));

    const StateVector twice = u * u * spin_basis(3);
    REQUIRE(linalg::fidelity(twice, spin_basis(0)) > 1 - 1e-15);

    const auto report = basis_change_check();
    REQUIRE(report.sm_deviation_up_to_phase < 1e-12);
    REQUIRE(std::abs(report.sm_global_phase - Complex(1, 0)) < 1e-12);
    REQUIRE(report.sm_deviation_exact < 1e-12);
    REQUIRE(report.sm_unitarity_defect < 1e-12);
}

TEST_CASE("diagonal phase gates commute with sz x sz") {
    for (const ComplexMatrix& g : {phase_gate_pi(), phase_gate_pi_half()}) {
        REQUIRE((g * sigma_zz() - sigma_zz() * g).cwiseAbs().maxCoeff() == 0);
    }
    const NormalModes modes = normal_modes(1.0, 1.0);
    const auto result = sigma_z_gate({0.4, -0.4}, modes, 0.5, Mode::Stretch);
    REQUIRE((result.gate * sigma_zz() - sigma_zz() * result.gate).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("sigma_z gate branch structure for opposite forces on the stretch mode") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const double f = 0.35, delta = 0.8;
    const auto result = sigma_z_gate({f, -f}, modes, delta, Mode::Stretch);
    REQUIRE(result.branches[0].mode_force == 0.0);  // uu: equal forces cancel
    REQUIRE(result.branches[3].mode_force == 0.0);  // dd
    REQUIRE(result.branches[0].phase == 0.0);
    REQUIRE(result.branches[1].phase == Approx(result.branches[2].phase).margin(1e-14));
    REQUIRE(result.branches[1].phase > 0);
    REQUIRE(std::abs(result.gate(0, 0) - Complex(1, 0)) < 1e-14);

    // each branch path closes
    for (const auto& path : result.paths) {
        REQUIRE(std::abs(path.alphas.back()) < 1e-9);
    }
}

TEST_CASE("calibrated sigma_z gate reproduces the pi/2 phase gate") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const double delta = 0.6;
    const ForcePattern pattern = calibrate_sigma_z(modes, delta, Mode::Stretch);
    REQUIRE(pattern.force_up == Approx(-pattern.force_down).epsilon(1e-14));
    const auto result = sigma_z_gate(pattern, modes, delta, Mode::Stretch);
    const double differential = result.branches[1].phase - result.branches[0].phase;
    REQUIRE(differential == Approx(kPi / 2).margin(1e-10));
    REQUIRE(linalg::deviation_up_to_phase(result.gate, phase_gate_pi_half()) < 1e-10);
}

TEST_CASE("equal forces on both ions give the identity up to a global phase") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const auto st = sigma_z_gate({0.4, 0.4}, modes, 0.5, Mode::Stretch);
    REQUIRE(linalg::deviation_up_to_phase(st.gate, ComplexMatrix::Identity(4, 4)) < 1e-14);
    const auto cm = sigma_z_gate({0.4, 0.4}, modes, 0.5, Mode::CenterOfMass);
    REQUIRE(linalg::deviation_up_to_phase(cm.gate, ComplexMatrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("sigma_z branch phases depend only on the drive parameter") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const double f = 0.27, delta = 0.4, scale = 3.7;
    const auto base = sigma_z_gate({f, -f}, modes, delta, Mode::Stretch);
    const auto scaled = sigma_z_gate({scale * f, -scale * f}, modes, scale * delta, Mode::Stretch);
    for (int s = 0; s < 4; ++s) {
        REQUIRE(scaled.branches[s].phase == Approx(base.branches[s].phase).margin(1e-10));
    }
}

TEST_CASE("sigma_z analytic phases agree with the time-domain oracle") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const ForcePattern pattern = calibrate_sigma_z(modes, 1.0, Mode::Stretch);
    const auto analytic = sigma_z_gate(pattern, modes, 1.0, Mode::Stretch);
    const auto integrated =
        sigma_z_gate_integrated(pattern, modes, 1.0, Mode::Stretch, 24, 2000);
    REQUIRE(integrated.min_ground_population > 1 - 1e-6);
    for (int s = 0; s < 4; ++s) {
        REQUIRE(integrated.phases[s] == Approx(analytic.branches[s].phase).margin(1e-3));
    }
}

TEST_CASE("calibrated sigma_phi gate is the collective spin flip") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const ComplexMatrix gate = calibrated_sigma_phi_gate(0.0, modes);
    REQUIRE(linalg::deviation_up_to_phase(gate, sm_gate()) < 1e-12);

    const StateVector out = gate * spin_basis(3);
    REQUIRE(std::norm(out(0)) == Approx(0.5).margin(1e-9));
    REQUIRE(std::norm(out(3)) == Approx(0.5).margin(1e-9));
    REQUIRE(std::norm(out(1)) < 1e-12);

    const StateVector twice = gate * gate * spin_basis(3);
    REQUIRE(linalg::fidelity(twice, spin_basis(0)) > 1 - 1e-9);
}

TEST_CASE("sigma_phi gate family is covariant under z rotations") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const ComplexMatrix base = sigma_phi_gate(0.0, 1.0, -1.0, modes);
    for (double phi : {0.7, 2.4}) {
        const ComplexMatrix gate = sigma_phi_gate(phi, 1.0, -1.0, modes);
        ComplexMatrix rz = ComplexMatrix::Zero(2, 2);
        rz(0, 0) = 1;
        rz(1, 1) = std::exp(Complex(0, phi));
        const ComplexMatrix conjugated =
            linalg::kron(rz, rz) * base * linalg::kron(rz, rz).adjoint();
        REQUIRE((gate - conjugated).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("sigma_phi zero drive is the identity") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const ComplexMatrix gate = sigma_phi_gate(0.9, 0.0, -1.0, modes);
    REQUIRE((gate - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sigma_phi integrated oracle matches the analytic gate") {
    const NormalModes modes = normal_modes(1.0, 1.0);
    const ComplexMatrix analytic = sigma_phi_gate(0.0, 1.0, -1.0, modes);
    const auto integrated = sigma_phi_gate_integrated(0.0, 1.0, -1.0, modes,
                                                      Mode::CenterOfMass, 24, 2000);
    REQUIRE(integrated.min_ground_population > 1 - 1e-6);
    REQUIRE(linalg::deviation_up_to_phase(integrated.gate, analytic) < 1e-3);
}

TEST_CASE("bell fidelity") {
    StateVector bellish = StateVector::Zero(4);
    bellish(0) = Complex(0, 1) / std::sqrt(2.0);
    bellish(3) = 1 / std::sqrt(2.0);
    REQUIRE(bell_fidelity(bellish) == Approx(1.0).margin(1e-12));
    REQUIRE(bell_fidelity(spin_basis(3)) == Approx(0.5).margin(1e-14));
    REQUIRE(bell_fidelity(StateVector(sm_gate() * spin_basis(3))) ==
            Approx(1.0).margin(1e-12));
}

TEST_CASE("bell fidelity on spin-motion products") {
    const int fock = 5;
    StateVector psi = StateVector::Zero(4 * fock);
    // (|uu> + i |dd>)/sqrt(2) x |n=2>
    psi(0 * fock + 2) = 1 / std::sqrt(2.0);
    psi(3 * fock + 2) = Complex(0, 1) / std::sqrt(2.0);
    REQUIRE(bell_fidelity(psi) == Approx(1.0).margin(1e-12));

    // entangled with motion: |uu,0> + |dd,1>
    StateVector bad = StateVector::Zero(4 * fock);
    bad(0) = 1 / std::sqrt(2.0);
    bad(3 * fock + 1) = 1 / std::sqrt(2.0);
    REQUIRE_THROWS_AS(bell_fidelity(bad), ValidationError);
}

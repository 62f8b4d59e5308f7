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

#include <random>

#include "iontk/linalg.hpp"
#include "iontk/spin_motion.hpp"
#include "oracles.hpp"

using namespace iontk;
using linalg::SpinFockSpace;
using Catch::Approx;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix random_hermitian(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    }
    return ComplexMatrix((m + m.adjoint()) / 2);
}

StateVector random_state(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    StateVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(dist(rng), dist(rng));
    v.normalize();
    return v;
}

}  // namespace

TEST_CASE("kron basics") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    REQUIRE((linalg::kron(i2, i2) - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0);

    const ComplexMatrix zi = linalg::kron(pauli_z(), i2);
    Eigen::Vector4cd expected;
    expected << 1, 1, -1, -1;
    REQUIRE((zi - ComplexMatrix(expected.asDiagonal())).cwiseAbs().maxCoeff() == 0);

    StateVector uu = StateVector::Zero(4);
    uu(0) = 1;
    StateVector flipped = linalg::kron(pauli_x(), pauli_x()) * uu;
    REQUIRE(std::abs(flipped(3) - Complex(1, 0)) == 0);
    REQUIRE(flipped.head(3).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("kron capacity limit") {
    const ComplexMatrix big = ComplexMatrix::Identity(100, 100);
    REQUIRE_THROWS_AS(linalg::kron(big, big), ValidationError);
}

TEST_CASE("propagator of the zero generator is the identity") {
    const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
    REQUIRE((linalg::propagator(zero, 2.7) - ComplexMatrix::Identity(3, 3))
                .cwiseAbs()
                .maxCoeff() < 1e-15);
}

TEST_CASE("propagator matches the analytic two-level form") {
    // exp(-i sx Omega t / 2) = cos(Omega t/2) I - i sin(Omega t/2) sx
    const double omega = 0.8;
    for (double t : {0.3, kPi / omega, 2.4}) {
        const ComplexMatrix u = linalg::propagator(omega / 2 * pauli_x(), t);
        ComplexMatrix ref(2, 2);
        const double half = omega * t / 2;
        ref << std::cos(half), Complex(0, -std::sin(half)), Complex(0, -std::sin(half)),
            std::cos(half);
        REQUIRE((u - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
    // pi pulse lands on -i sx
    const ComplexMatrix u = linalg::propagator(omega / 2 * pauli_x(), kPi / omega);
    REQUIRE((u - Complex(0, -1) * pauli_x()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("propagator inverse pair and group property") {
    const ComplexMatrix h = random_hermitian(6, 11);
    const ComplexMatrix fwd = linalg::propagator(h, 1.3);
    const ComplexMatrix bwd = linalg::propagator(h, -1.3);
    REQUIRE((fwd * bwd - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);

    const ComplexMatrix combined = linalg::propagator(h, 0.4 + 0.9);
    REQUIRE((linalg::propagator(h, 0.4) * linalg::propagator(h, 0.9) - combined)
                .cwiseAbs()
                .maxCoeff() < 1e-11);
    REQUIRE(linalg::unitarity_defect(fwd) < 1e-10);
}

TEST_CASE("propagator rejects non-Hermitian generators") {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    REQUIRE_THROWS_AS(linalg::propagator(bad, 1.0), ValidationError);
}

TEST_CASE("fidelity") {
    const StateVector psi = random_state(8, 5);
    REQUIRE(linalg::fidelity(psi, psi) == Approx(1.0).margin(1e-14));
    for (double theta : {0.1, 2.0, 4.5}) {
        REQUIRE(linalg::fidelity(psi, StateVector(std::exp(Complex(0, theta)) * psi)) ==
                Approx(1.0).margin(1e-14));
    }
    StateVector up = StateVector::Zero(2), down = StateVector::Zero(2);
    up(0) = 1;
    down(1) = 1;
    REQUIRE(linalg::fidelity(up, down) == 0.0);
    REQUIRE_THROWS_AS(linalg::fidelity(up, psi), ValidationError);
}

TEST_CASE("born probabilities") {
    const SpinFockSpace space = SpinFockSpace::single_ion(6);
    StateVector psi = StateVector::Zero(space.dimension());
    psi(0) = 1;  // |up, 0>
    auto [p_up, p_down] = linalg::born_probabilities(psi, space, 0);
    REQUIRE(p_up == 1.0);
    REQUIRE(p_down == 0.0);

    psi.setZero();  // (|up> + |down>)/sqrt(2) x |n=3>
    psi(3) = 1 / std::sqrt(2.0);
    psi(6 + 3) = 1 / std::sqrt(2.0);
    std::tie(p_up, p_down) = linalg::born_probabilities(psi, space, 0);
    REQUIRE(p_up == Approx(0.5).margin(1e-14));

    // carrier pi/2 pulse from |down, 0>
    StateVector down0 = StateVector::Zero(space.dimension());
    down0(6) = 1;
    const ComplexMatrix u = linalg::kron(spin_motion::rotation_equatorial(0, kPi / 2),
                                         ComplexMatrix::Identity(6, 6));
    std::tie(p_up, p_down) = linalg::born_probabilities(StateVector(u * down0), space, 0);
    REQUIRE(p_up == Approx(0.5).margin(1e-9));

    REQUIRE_THROWS_AS(linalg::born_probabilities(psi, space, 1), ValidationError);
}

TEST_CASE("born probabilities sum to one") {
    const SpinFockSpace space(2, {5});
    for (unsigned seed : {1u, 2u, 3u}) {
        const StateVector psi = random_state(int(space.dimension()), seed);
        for (int spin = 0; spin < 2; ++spin) {
            auto [p_up, p_down] = linalg::born_probabilities(psi, space, spin);
            REQUIRE(p_up + p_down == Approx(1.0).margin(1e-10));
        }
    }
}

TEST_CASE("assoc_laguerre basics") {
    for (int k : {0, 1, 4}) {
        REQUIRE(linalg::assoc_laguerre(0, k, 0.3) == 1.0);
    }
    REQUIRE(linalg::assoc_laguerre(1, 1, 0.01) == Approx(1.99).margin(1e-14));
    REQUIRE(linalg::assoc_laguerre(5, 2, 0.04) ==
            Approx(oracles::laguerre_series(5, 2, 0.04)).margin(1e-12));
}

TEST_CASE("assoc_laguerre agrees with series summation") {
    for (int n = 0; n <= 20; ++n) {
        for (int k = 0; k <= 5; ++k) {
            for (double x : {0.0, 0.01, 0.09, 0.25, 1.0}) {
                REQUIRE(linalg::assoc_laguerre(n, k, x) ==
                        Approx(oracles::laguerre_series(n, k, x)).margin(1e-12));
            }
        }
    }
}

TEST_CASE("ladder operators") {
    const auto [a, adag] = linalg::ladder_operators(8);
    StateVector vac = StateVector::Zero(8);
    vac(0) = 1;
    REQUIRE(StateVector(a * vac).cwiseAbs().maxCoeff() == 0);
    StateVector one = adag * vac;
    REQUIRE(std::abs(one(1) - Complex(1, 0)) == 0);
    const ComplexMatrix number = adag * a;
    for (int n = 0; n < 8; ++n) {
        REQUIRE(std::real(number(n, n)) == Approx(double(n)).margin(1e-14));
    }
}

TEST_CASE("leakage sentinel") {
    const SpinFockSpace space = SpinFockSpace::single_ion(50);
    StateVector down0 = StateVector::Zero(space.dimension());
    down0(50) = 1;
    REQUIRE(linalg::leakage(down0, space) == 0.0);

    const SpinFockSpace fock50(0, {50});
    REQUIRE(linalg::leakage(oracles::coherent_state(1.0, 50), fock50) < 1e-30);

    const SpinFockSpace fock40(0, {40});
    REQUIRE(linalg::leakage(oracles::coherent_state(6.0, 40), fock40) > 1e-3);
}

TEST_CASE("evolution operators stay unitary") {
    for (unsigned seed : {7u, 8u}) {
        const ComplexMatrix u = linalg::propagator(random_hermitian(10, seed), 2.2);
        REQUIRE(linalg::unitarity_defect(u) <= 1e-10);
    }
}

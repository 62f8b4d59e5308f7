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
#include <utility>
#include <vector>

#include "iontk/common.hpp"
#include "iontk/linalg.hpp"

namespace iontk::spin_motion {

using linalg::SpinFockSpace;

// Drive parameters, in trap units (omega_m = 1 unless stated otherwise).
// qubit_frequency is consumed only by the lab-frame integrator.
struct PulseSpec {
    double rabi = 1.0;             // Omega_0
    double detuning = 0.0;         // delta = omega - omega_0
    double phase = 0.0;            // phi
    double lamb_dicke = 0.0;       // eta
    double duration = 0.0;
    double trap_frequency = 1.0;   // omega_m
    double qubit_frequency = 100.0;  // omega_0

    void validate() const {
        if (rabi < 0 || lamb_dicke < 0 || duration < 0) {
            throw ValidationError("PulseSpec: rabi, lambDicke and duration must be >= 0");
        }
        if (trap_frequency <= 0) throw ValidationError("PulseSpec: trap frequency must be > 0");
    }
};

// Sideband order: 0 carrier, -1 red, +1 blue, |s| > 1 higher sidebands.
struct SidebandSelector {
    int s = 0;
};

// Advisory check eta^2 (<n> + 1/2) < 0.1.
inline bool lamb_dicke_regime(double eta, double nbar) {
    return eta * eta * (nbar + 0.5) < 0.1;
}

// -- Bloch-sphere rotations ---------------------------------------------------
//
// Azimuth convention: the equatorial generator at angle phi is
// sigma_+ e^{i phi} + sigma_- e^{-i phi}, i.e. exactly the direction the
// carrier Hamiltonian rotates about. rotation(0, phi, theta) therefore equals
// the carrier propagator with theta = Omega t.

// exp(-i theta/2 [cos(beta)(s+ e^{i phi} + s- e^{-i phi}) + sin(beta) sz]).
inline ComplexMatrix rotation(double beta, double phi, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const double nz = std::sin(beta), nxy = std::cos(beta);
    ComplexMatrix r(2, 2);
    r(0, 0) = Complex(c, -nz * s);
    r(0, 1) = Complex(0, -nxy * s) * std::exp(Complex(0, phi));
    r(1, 0) = Complex(0, -nxy * s) * std::exp(Complex(0, -phi));
    r(1, 1) = Complex(c, nz * s);
    return r;
}

// Equatorial special case, written out as the spinor rotation matrix.
inline ComplexMatrix rotation_equatorial(double phi, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    ComplexMatrix r(2, 2);
    r(0, 0) = c;
    r(0, 1) = Complex(0, -s) * std::exp(Complex(0, phi));
    r(1, 0) = Complex(0, -s) * std::exp(Complex(0, -phi));
    r(1, 1) = c;
    return r;
}

// -- Debye-Waller couplings ---------------------------------------------------

// Signed matrix element factor e^{-eta^2/2} eta^|s| sqrt(n_<!/n_>!) L(eta^2).
// Carries the Laguerre sign; enters Hamiltonians, not reported Rabi rates.
inline double debye_waller_element(int n, int s, double eta) {
    if (n < 0) throw ValidationError("debye_waller: n must be >= 0");
    if (n + s < 0) throw ValidationError("debye_waller: transition out of the ladder (n + s < 0)");
    const int n_low = std::min(n, n + s);
    const int n_high = std::max(n, n + s);
    double ratio = 1.0;  // sqrt(n_<!/n_>!)
    for (int k = n_low + 1; k <= n_high; ++k) ratio /= std::sqrt(double(k));
    return std::exp(-eta * eta / 2) * std::pow(eta, std::abs(s)) * ratio *
           linalg::assoc_laguerre(n_low, std::abs(s), eta * eta);
}

// |<n+s| e^{i eta (a + a^dag)} |n>|. Rabi frequencies use the magnitude;
// symmetric between n and n+s.
inline double debye_waller(int n, int s, double eta) {
    return std::abs(debye_waller_element(n, s, eta));
}

// Omega_{n+s,n} = Omega_0 D_{n+s,n}. Zero when the transition leads out of
// the ladder (no h.o. quanta left to extract), e.g. the red sideband at n = 0.
inline double rabi_frequency(const PulseSpec& spec, int n, int s) {
    if (n >= 0 && n + s < 0) return 0.0;
    return spec.rabi * debye_waller(n, s, spec.lamb_dicke);
}

// First-order Lamb-Dicke expansions of the carrier and first sidebands.
inline double lamb_dicke_rabi(const PulseSpec& spec, int n, int s) {
    if (n < 0) throw ValidationError("lamb_dicke_rabi: n must be >= 0");
    const double eta = spec.lamb_dicke;
    switch (s) {
        case 0:
            return spec.rabi * (1.0 - (n + 0.5) * eta * eta);
        case -1:
            if (n == 0) return 0.0;
            return spec.rabi * std::sqrt(double(n)) * eta;
        case +1:
            return spec.rabi * std::sqrt(double(n + 1)) * eta;
        default:
            throw ValidationError("lamb_dicke_rabi: only |s| <= 1 has a quoted expansion");
    }
}

enum class CouplingModel {
    Exact,             // level-dependent Debye-Waller matrix elements
    UniformLambDicke,  // textbook idealization, |s| <= 1 only
};

// Resonant sideband Hamiltonian for a single ion, with the exact
// level-dependent coupling by default. Couples |up, n+s> to |down, n>.
inline ComplexMatrix sideband_hamiltonian(const PulseSpec& spec, SidebandSelector sideband,
                                          const SpinFockSpace& space,
                                          CouplingModel model = CouplingModel::Exact) {
    spec.validate();
    if (space.spin_count != 1 || space.fock_cutoffs.size() != 1) {
        throw ValidationError("sideband_hamiltonian: expects one spin and one mode");
    }
    const int cutoff = space.fock_cutoffs[0];
    const int s = sideband.s;
    if (std::abs(s) >= cutoff) {
        throw ValidationError("sideband_hamiltonian: Fock cutoff too small for sideband order");
    }
    const Complex phase = std::exp(Complex(0, spec.phase));
    ComplexMatrix h = ComplexMatrix::Zero(2 * cutoff, 2 * cutoff);
    for (int n = 0; n < cutoff; ++n) {
        const int m = n + s;  // Fock level on the |up> side
        if (m < 0 || m >= cutoff) continue;
        double coupling;
        if (model == CouplingModel::Exact) {
            coupling = spec.rabi * debye_waller_element(n, s, spec.lamb_dicke);
        } else {
            // textbook idealization: uniform carrier, first-order sidebands
            coupling = s == 0 ? spec.rabi : lamb_dicke_rabi(spec, n, s);
        }
        h(m, cutoff + n) = 0.5 * coupling * phase;  // <up,m| H |down,n>
        h(cutoff + n, m) = std::conj(h(m, cutoff + n));
    }
    return h;
}

// -- observables over time and detuning ---------------------------------------

// P_up sampled uniformly over the pulse duration (samples >= 2 points).
inline std::vector<std::pair<double, double>> nutation_curve(const PulseSpec& spec,
                                                             SidebandSelector sideband,
                                                             const StateVector& initial,
                                                             int samples,
                                                             CouplingModel model
                                                             = CouplingModel::Exact) {
    if (samples < 2) throw ValidationError("nutation_curve: need at least 2 samples");
    const SpinFockSpace space = SpinFockSpace::single_ion(int(initial.size() / 2));
    linalg::HermitianSpectrum spectrum(sideband_hamiltonian(spec, sideband, space, model));
    std::vector<std::pair<double, double>> out;
    out.reserve(samples);
    for (int k = 0; k < samples; ++k) {
        const double t = spec.duration * k / (samples - 1);
        StateVector psi = spectrum.evolve(initial, t);
        linalg::check_leakage(psi, space, "nutation_curve");
        out.emplace_back(t, linalg::born_probabilities(psi, space, 0).first);
    }
    return out;
}

// Thermal occupation weights p_n for n = 0..count-1 (not renormalized; the
// missing tail is the mixture's truncation error).
inline std::vector<double> thermal_weights(double nbar, int count) {
    if (nbar < 0) throw ValidationError("thermal_weights: nbar must be >= 0");
    std::vector<double> w(count);
    const double r = nbar / (nbar + 1.0);
    double p = 1.0 / (nbar + 1.0);
    for (int n = 0; n < count; ++n) {
        w[n] = p;
        p *= r;
    }
    return w;
}

// Spin-up population vs time for a thermal classical mixture over |down, n>.
// The mixture stops below the top two Fock levels; the discarded weight is
// part of the truncation error budget, so pick the cutoff with headroom.
inline std::vector<std::pair<double, double>> nutation_curve_thermal(
    const PulseSpec& spec, SidebandSelector sideband, double nbar, const SpinFockSpace& space,
    int samples, CouplingModel model = CouplingModel::Exact) {
    const int cutoff = space.fock_cutoffs.at(0);
    const auto weights = thermal_weights(nbar, cutoff);
    std::vector<std::pair<double, double>> total(samples);
    for (int n = 0; n + 2 < cutoff; ++n) {
        if (weights[n] < 1e-16) break;
        StateVector psi0 = StateVector::Zero(2 * cutoff);
        psi0(cutoff + n) = 1.0;
        const auto curve = nutation_curve(spec, sideband, psi0, samples, model);
        for (int k = 0; k < samples; ++k) {
            total[k].first = curve[k].first;
            total[k].second += weights[n] * curve[k].second;
        }
    }
    return total;
}

// Full interaction Hamiltonian at detuning delta, every sideband term kept:
//   H = -delta/2 sz + omega_m n_hat + Omega_0/2 (s+ e^{i eta(a+a^dag)} e^{i phi} + h.c.)
// in the frame rotating at the drive frequency. Populations in this frame
// equal interaction-picture populations.
inline ComplexMatrix detuned_hamiltonian(const PulseSpec& spec, double delta,
                                         const SpinFockSpace& space) {
    if (space.spin_count != 1 || space.fock_cutoffs.size() != 1) {
        throw ValidationError("detuned_hamiltonian: expects one spin and one mode");
    }
    const int cutoff = space.fock_cutoffs[0];
    const auto [a, adag] = linalg::ladder_operators(cutoff);
    const ComplexMatrix recoil =
        linalg::propagator(-spec.lamb_dicke * (a + adag), 1.0);  // e^{i eta (a+a^dag)}
    ComplexMatrix sz = ComplexMatrix::Zero(2, 2);
    sz(0, 0) = 1;
    sz(1, 1) = -1;
    ComplexMatrix sp = ComplexMatrix::Zero(2, 2);
    sp(0, 1) = 1;
    const ComplexMatrix eye = ComplexMatrix::Identity(cutoff, cutoff);
    ComplexMatrix h = linalg::kron(-0.5 * delta * sz, eye);
    h += linalg::kron(ComplexMatrix::Identity(2, 2), spec.trap_frequency * (adag * a));
    const ComplexMatrix drive =
        0.5 * spec.rabi * std::exp(Complex(0, spec.phase)) * linalg::kron(sp, recoil);
    h += drive + drive.adjoint();
    return h;
}

// P_up after the fixed pulse duration, for each detuning on the grid.
inline std::vector<std::pair<double, double>> sideband_spectrum(
    const PulseSpec& spec, const StateVector& initial, const std::vector<double>& detuning_grid) {
    if (detuning_grid.empty()) throw ValidationError("sideband_spectrum: empty detuning grid");
    const SpinFockSpace space = SpinFockSpace::single_ion(int(initial.size() / 2));
    std::vector<std::pair<double, double>> out(detuning_grid.size());
    for (std::size_t i = 0; i < detuning_grid.size(); ++i) {
        linalg::HermitianSpectrum spectrum(detuned_hamiltonian(spec, detuning_grid[i], space));
        StateVector psi = spectrum.evolve(initial, spec.duration);
        linalg::check_leakage(psi, space, "sideband_spectrum");
        out[i] = {detuning_grid[i], linalg::born_probabilities(psi, space, 0).first};
    }
    return out;
}

// -- lab-frame oracle ----------------------------------------------------------
//
// No rotating-wave approximation anywhere: integrates H0 + V(t) with
//   H0 = omega_0/2 sz + omega_m (n_hat + 1/2)
//   V(t) = Omega_0 (s+ + s-) cos(eta (a + a^dag) - omega t + phi),
// omega = omega_0 + delta, by piecewise-constant midpoint product integration
// (second order in the step size).

inline int lab_frame_min_steps(const PulseSpec& spec) {
    const double omega = spec.qubit_frequency + spec.detuning;
    const double f_max = std::max({std::abs(spec.qubit_frequency), std::abs(omega),
                                   spec.trap_frequency, spec.rabi});
    return int(std::ceil(spec.duration * 50.0 * f_max / (2 * kPi)));
}

inline StateVector evolve_lab_frame(const PulseSpec& spec, const StateVector& initial,
                                    const SpinFockSpace& space, int steps) {
    spec.validate();
    if (space.spin_count != 1 || space.fock_cutoffs.size() != 1) {
        throw ValidationError("evolve_lab_frame: expects one spin and one mode");
    }
    if (!(spec.qubit_frequency > 0) || !std::isfinite(spec.qubit_frequency)) {
        throw ValidationError("evolve_lab_frame: qubit frequency must be finite and positive");
    }
    if (steps < lab_frame_min_steps(spec)) {
        throw ValidationError("evolve_lab_frame: " + std::to_string(steps) +
                              " steps violate the 50-per-fastest-period requirement (need >= " +
                              std::to_string(lab_frame_min_steps(spec)) + ")");
    }
    const int cutoff = space.fock_cutoffs[0];
    const auto [a, adag] = linalg::ladder_operators(cutoff);
    const ComplexMatrix x_op = a + adag;

    // cos/sin of the recoil operator, computed once.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(spec.lamb_dicke * x_op);
    const ComplexMatrix cos_recoil = es.eigenvectors() *
                                     es.eigenvalues().array().cos().matrix().asDiagonal() *
                                     es.eigenvectors().adjoint();
    const ComplexMatrix sin_recoil = es.eigenvectors() *
                                     es.eigenvalues().array().sin().matrix().asDiagonal() *
                                     es.eigenvectors().adjoint();

    ComplexMatrix sz = ComplexMatrix::Zero(2, 2);
    sz(0, 0) = 1;
    sz(1, 1) = -1;
    ComplexMatrix sx = ComplexMatrix::Zero(2, 2);
    sx(0, 1) = 1;
    sx(1, 0) = 1;
    const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix eyeN = ComplexMatrix::Identity(cutoff, cutoff);
    const ComplexMatrix h0 = linalg::kron(0.5 * spec.qubit_frequency * sz, eyeN) +
                             linalg::kron(eye2, spec.trap_frequency * (adag * a + 0.5 * eyeN));
    const ComplexMatrix drive_cos = spec.rabi * linalg::kron(sx, cos_recoil);
    const ComplexMatrix drive_sin = spec.rabi * linalg::kron(sx, sin_recoil);

    const double omega = spec.qubit_frequency + spec.detuning;
    const double dt = spec.duration / steps;
    StateVector psi = initial;
    const int leak_stride = std::max(1, steps / 32);
    for (int k = 0; k < steps; ++k) {
        const double t = (k + 0.5) * dt;
        // cos(eta x - omega t + phi) = cos(eta x) cos(omega t - phi) + sin(eta x) sin(omega t - phi)
        const ComplexMatrix h = h0 + std::cos(omega * t - spec.phase) * drive_cos +
                                std::sin(omega * t - spec.phase) * drive_sin;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> step(h);
        Eigen::VectorXcd coeffs = step.eigenvectors().adjoint() * psi;
        coeffs.array() *= (Complex(0, -dt) * step.eigenvalues().cast<Complex>().array()).exp();
        psi = step.eigenvectors() * coeffs;
        if ((k + 1) % leak_stride == 0) linalg::check_leakage(psi, space, "evolve_lab_frame");
    }
    linalg::check_leakage(psi, space, "evolve_lab_frame");
    return psi;
}

// Transfer a lab-frame state at time t into the interaction picture,
// psi_int = e^{+i H0 t} psi_lab.
inline StateVector to_interaction_frame(const StateVector& psi, const PulseSpec& spec,
                                        const SpinFockSpace& space, double t) {
    const int cutoff = space.fock_cutoffs.at(0);
    StateVector out(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        const int spin = int(i / cutoff);  // 0 up, 1 down
        const int n = int(i % cutoff);
        const double energy = (spin == 0 ? 0.5 : -0.5) * spec.qubit_frequency +
                              spec.trap_frequency * (n + 0.5);
        out(i) = psi(i) * std::exp(Complex(0, energy * t));
    }
    return out;
}

}  // namespace iontk::spin_motion

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

namespace iontk::driven_osc {

// Off-resonant drive F(t) = F0 cos(omega t) at omega = omega_m - delta,
// in trap units (omega_m = 1, hbar = 1). One closed phase-space loop takes
// tau_g = 2 pi / |delta|.
//
// Sign conventions are fixed by the time-domain integrator (integrate_driven):
// for delta > 0 the loop is counterclockwise and the accumulated phase is
// positive; delta < 0 mirrors the path and flips every phase sign.
struct DriveSpec {
    double force_amplitude = 0;    // F0
    double ground_state_width = 1; // x0
    double detuning = 0;           // delta, nonzero
    double duration = 0;

    void validate() const {
        if (detuning == 0) throw ValidationError("DriveSpec: detuning must be nonzero");
        if (duration < 0) throw ValidationError("DriveSpec: negative duration");
    }

    // F0 x0 / delta; the gate condition phi = pi/2 corresponds to |u| = 1.
    double drive_parameter() const { return force_amplitude * ground_state_width / detuning; }

    // Center and radius of the alpha circle, F0 x0 / (2 delta).
    double circle_radius() const { return drive_parameter() / 2; }

    double loop_time() const { return 2 * kPi / std::abs(detuning); }

    static DriveSpec for_one_loop(double force_amplitude, double detuning,
                                  double ground_state_width = 1.0) {
        DriveSpec s;
        s.force_amplitude = force_amplitude;
        s.ground_state_width = ground_state_width;
        s.detuning = detuning;
        s.duration = 2 * kPi / std::abs(detuning);
        return s;
    }
};

// Closed-form lab-frame trajectory of the classical driven oscillator,
// starting from rest. Exact, no rotating-wave approximation.
inline std::vector<std::pair<double, double>> classical_trajectory(
    const DriveSpec& spec, double mass, const std::vector<double>& times) {
    spec.validate();
    if (mass <= 0) throw ValidationError("classical_trajectory: mass must be > 0");
    const double omega_m = 1.0;
    const double omega = omega_m - spec.detuning;
    const double denom = omega * omega - omega_m * omega_m;
    std::vector<std::pair<double, double>> out;
    out.reserve(times.size());
    for (double t : times) {
        const double x =
            spec.force_amplitude / mass / denom * (std::cos(omega * t) - std::cos(omega_m * t));
        const double p = spec.force_amplitude / denom *
                         (omega_m * std::sin(omega_m * t) - omega * std::sin(omega * t));
        out.emplace_back(x, p);
    }
    return out;
}

// Transfer a lab-frame (x, p) sample into the frame rotating at omega_m,
// alpha = x' + i p' with x normalized by 2 x0 and p by 1/x0.
inline Complex classical_rotating_frame(const DriveSpec& spec, double x, double p, double t) {
    const double omega_m = 1.0;
    const Complex z(x / (2 * spec.ground_state_width), p * spec.ground_state_width);
    return z * std::exp(Complex(0, omega_m * t));
}

// Rotating-frame circle alpha(t) = (F0 x0 / 2 delta)(1 - e^{i delta t}).
inline std::vector<Complex> rotating_frame_path(const DriveSpec& spec,
                                                const std::vector<double>& times) {
    spec.validate();
    const double radius = spec.circle_radius();
    std::vector<Complex> out;
    out.reserve(times.size());
    for (double t : times) {
        out.push_back(radius * (1.0 - std::exp(Complex(0, spec.detuning * t))));
    }
    return out;
}

// Area of the alpha circle, S = pi [F0 x0 / (2 delta)]^2.
inline double phase_space_area(const DriveSpec& spec) {
    spec.validate();
    const double r = spec.circle_radius();
    return kPi * r * r;
}

struct PhaseDecomposition {
    double total = 0;
    double dynamic = 0;
    double geometric = 0;
};

// Closed-form phases for one full loop: total = sgn(delta) (pi/2) u^2 with
// u = F0 x0 / delta, dynamic = 2 total, geometric = -total. |geometric| is
// twice the enclosed area.
inline PhaseDecomposition analytic_phases(const DriveSpec& spec) {
    spec.validate();
    if (std::abs(spec.duration / spec.loop_time() - 1.0) > 1e-9) {
        throw ValidationError("analytic_phases: duration must be one full loop, 2 pi / |delta|");
    }
    const double u = spec.drive_parameter();
    const double sign = spec.detuning > 0 ? 1.0 : -1.0;
    const double total = sign * kPi / 2 * u * u;
    return {total, 2 * total, -total};
}

// D(alpha) D(beta) = D(alpha + beta) e^{i Im(alpha conj(beta))}: returns the
// composed displacement and the accumulated phase.
inline std::pair<Complex, double> compose_displacements(Complex alpha, Complex beta) {
    return {alpha + beta, std::imag(alpha * std::conj(beta))};
}

// exp(alpha a^dag - conj(alpha) a) on the truncated ladder. Column 0 holds
// the coherent-state amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!).
inline ComplexMatrix displacement_matrix(Complex alpha, int cutoff) {
    if (cutoff < 4 * (1 + std::norm(alpha))) {
        throw ValidationError("displacement_matrix: cutoff below 4 (1 + |alpha|^2)");
    }
    const auto [a, adag] = linalg::ladder_operators(cutoff);
    const ComplexMatrix generator = alpha * adag - std::conj(alpha) * a;  // anti-Hermitian
    return linalg::propagator(Complex(0, 1) * generator, 1.0);
}

// <alpha|beta> = exp(-(|alpha|^2 + |beta|^2)/2 + conj(alpha) beta).
inline Complex coherent_overlap(Complex alpha, Complex beta) {
    return std::exp(-(std::norm(alpha) + std::norm(beta)) / 2.0 + std::conj(alpha) * beta);
}

// Sampled trajectory with running phase integrals. total always decomposes
// as dynamic + geometric by construction; the CSV columns are
// time, re_alpha, im_alpha, cum_dynamic, cum_geometric.
struct DrivePath {
    std::vector<double> times;
    std::vector<Complex> alphas;
    std::vector<double> cum_dynamic;
    std::vector<double> cum_geometric;
    double enclosed_area = 0;

    double dynamic_phase() const { return cum_dynamic.empty() ? 0 : cum_dynamic.back(); }
    double geometric_phase() const { return cum_geometric.empty() ? 0 : cum_geometric.back(); }
    double total_phase() const { return dynamic_phase() + geometric_phase(); }
};

struct NumericPhases {
    double dynamic = 0;
    double geometric = 0;
};

// Geometric phase -Im sum conj(alpha_mid) d_alpha of an arbitrary sampled
// parameter-space path; second order in the sample spacing.
inline double geometric_phase_of_path(const std::vector<Complex>& alphas) {
    double geo = 0;
    for (std::size_t k = 0; k + 1 < alphas.size(); ++k) {
        const Complex mid = (alphas[k] + alphas[k + 1]) / 2.0;
        geo -= std::imag(std::conj(mid) * (alphas[k + 1] - alphas[k]));
    }
    return geo;
}

// Phase quadratures along a sampled path: dynamic by trapezoid of the drive
// energy expectation -<alpha|V_I|alpha>, geometric by the midpoint sum above.
// Both converge as O(1/samples^2).
inline NumericPhases numeric_phases(const DriveSpec& spec, const DrivePath& path) {
    spec.validate();
    if (path.times.size() < 2 || path.times.size() != path.alphas.size()) {
        throw ValidationError("numeric_phases: need a sampled path");
    }
    const double fx = spec.force_amplitude * spec.ground_state_width;
    auto energy = [&](std::size_t k) {
        const Complex rot = std::exp(Complex(0, spec.detuning * path.times[k]));
        return fx * std::real(std::conj(path.alphas[k]) * rot);
    };
    double dyn = 0;
    for (std::size_t k = 0; k + 1 < path.times.size(); ++k) {
        dyn -= (energy(k) + energy(k + 1)) / 2.0 * (path.times[k + 1] - path.times[k]);
    }
    return {dyn, geometric_phase_of_path(path.alphas)};
}

// Sample the closed-form trajectory and fill in the running phase integrals.
inline DrivePath make_drive_path(const DriveSpec& spec, int samples) {
    spec.validate();
    if (samples < 2) throw ValidationError("make_drive_path: need at least 2 samples");
    DrivePath path;
    path.times.resize(samples);
    for (int k = 0; k < samples; ++k) {
        path.times[k] = spec.duration * k / (samples - 1);
    }
    path.alphas = rotating_frame_path(spec, path.times);
    path.cum_dynamic.assign(samples, 0.0);
    path.cum_geometric.assign(samples, 0.0);
    const double fx = spec.force_amplitude * spec.ground_state_width;
    double area = 0;
    for (int k = 0; k + 1 < samples; ++k) {
        auto energy = [&](int j) {
            const Complex rot = std::exp(Complex(0, spec.detuning * path.times[j]));
            return fx * std::real(std::conj(path.alphas[j]) * rot);
        };
        path.cum_dynamic[k + 1] =
            path.cum_dynamic[k] -
            (energy(k) + energy(k + 1)) / 2.0 * (path.times[k + 1] - path.times[k]);
        const Complex mid = (path.alphas[k] + path.alphas[k + 1]) / 2.0;
        const Complex step = path.alphas[k + 1] - path.alphas[k];
        path.cum_geometric[k + 1] = path.cum_geometric[k] - std::imag(std::conj(mid) * step);
        area += 0.5 * std::imag(std::conj(mid) * step);
    }
    path.enclosed_area = std::abs(area);
    return path;
}

struct DrivenResult {
    StateVector final_state;
    double total_phase = 0;       // arg <0|psi(end)>
    double ground_population = 0; // |<0|psi(end)>|^2
    std::vector<std::pair<double, Complex>> a_expectation;  // <a>(t) samples
};

// Time-domain master oracle: Schrodinger integration of
//   V_I(t) = (F0 x0 / 2)(a^dag e^{i delta t} + a e^{-i delta t})
// from the ground state, by midpoint product integration. V_I does not
// commute with itself at different times, so the step count controls a
// second-order error.
inline DrivenResult integrate_driven(const DriveSpec& spec, int cutoff, int steps) {
    spec.validate();
    const double loops = spec.duration / spec.loop_time();
    if (steps < 100 * loops) {
        throw ValidationError("integrate_driven: need at least 100 steps per loop");
    }
    const double max_alpha = std::abs(spec.drive_parameter());
    if (cutoff < 4 * (1 + max_alpha * max_alpha)) {
        throw ValidationError("integrate_driven: cutoff below 4 (1 + max |alpha|^2)");
    }
    const linalg::SpinFockSpace space(0, {cutoff});
    const auto [a, adag] = linalg::ladder_operators(cutoff);
    const double fx = spec.force_amplitude * spec.ground_state_width;

    StateVector psi = StateVector::Zero(cutoff);
    psi(0) = 1.0;
    DrivenResult result;
    result.a_expectation.reserve(steps + 1);
    auto record = [&](double t, const StateVector& state) {
        Complex expect = 0;
        for (int n = 0; n + 1 < cutoff; ++n) {
            expect += std::sqrt(double(n + 1)) * std::conj(state(n)) * state(n + 1);
        }
        result.a_expectation.emplace_back(t, expect);
    };
    record(0.0, psi);

    const double dt = spec.duration / steps;
    const int leak_stride = std::max(1, steps / 32);
    for (int k = 0; k < steps; ++k) {
        const double t = (k + 0.5) * dt;
        const Complex rot = std::exp(Complex(0, spec.detuning * t));
        const ComplexMatrix v = fx / 2.0 * (rot * adag + std::conj(rot) * a);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(v);
        Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi;
        coeffs.array() *= (Complex(0, -dt) * es.eigenvalues().cast<Complex>().array()).exp();
        psi = es.eigenvectors() * coeffs;
        record((k + 1) * dt, psi);
        if ((k + 1) % leak_stride == 0) linalg::check_leakage(psi, space, "integrate_driven");
    }
    linalg::check_leakage(psi, space, "integrate_driven");
    result.final_state = psi;
    result.total_phase = std::arg(psi(0));
    result.ground_population = std::norm(psi(0));
    return result;
}

}  // namespace iontk::driven_osc

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
#include <vector>

#include "iontk/common.hpp"

namespace iontk::couplings {

// One travelling plane-wave mode. Amplitudes and wavevectors are in
// normalized units; polarization must be unit norm.
struct BeamSpec {
    double amplitude = 0;
    Eigen::Vector3cd polarization = Eigen::Vector3cd(1, 0, 0);
    Eigen::Vector3d wavevector = Eigen::Vector3d(0, 0, 0);
    double phase = 0;
    double frequency = 0;

    void validate() const {
        if (std::abs(polarization.norm() - 1.0) > 1e-12) {
            throw ValidationError("BeamSpec: polarization must be unit norm");
        }
    }
};

// Dipole couplings of the two qubit levels to one excited level, for one
// beam. Matrix elements are caller-supplied in normalized units; the module
// never computes atomic structure.
struct LevelCoupling {
    Complex matrix_element_up;    // <up| d.eps |e_i>
    Complex matrix_element_down;  // <down| d.eps |e_i>
    double detuning = 0;          // Delta_i for this beam

    void validate() const {
        if (detuning == 0) {
            throw ValidationError("LevelCoupling: zero detuning (resonant excitation)");
        }
    }
};

// Couplings of one excited level to the red and blue Raman beams.
struct RamanLevel {
    LevelCoupling red;
    LevelCoupling blue;
};

// Effective two-photon coupling: magnitude is the Rabi frequency, the
// argument folds into the pulse phase.
struct EffectiveRabi {
    double magnitude = 0;
    double phase = 0;
};

// Magnetic dipole Rabi frequency 2 pi x 28 B0 sin(angle) MHz: maximal for a
// drive field perpendicular to the quantization axis, zero parallel.
inline double magnetic_dipole_rabi(double b0_mt, double angle_to_quantization_axis) {
    if (b0_mt < 0) throw ValidationError("magnetic_dipole_rabi: negative field amplitude");
    return 2 * kPi * 28.0 * b0_mt * std::sin(angle_to_quantization_axis);
}

// Two-photon Raman Rabi frequency
//   Omega_0 = (Er Eb / 4) sum_i <up|d.eps_r|e_i><e_i|d.eps_b|down> / Delta_i,
// with Delta_i taken from the red-beam coupling.
inline EffectiveRabi raman_rabi(double e_r, double e_b, const std::vector<RamanLevel>& levels) {
    if (levels.empty()) throw ValidationError("raman_rabi: no excited levels supplied");
    Complex sum = 0;
    for (const auto& lvl : levels) {
        lvl.red.validate();
        lvl.blue.validate();
        sum += lvl.red.matrix_element_up * std::conj(lvl.blue.matrix_element_down) /
               lvl.red.detuning;
    }
    const Complex omega = e_r * e_b / 4.0 * sum;
    return {std::abs(omega), std::arg(omega)};
}

struct LightShifts {
    double down = 0;
    double up = 0;
    double differential = 0;  // up - down, the sigma_z coefficient scale
};

// Second-order light shifts of the two qubit levels from both Raman beams,
//   Delta_{down/up} = |Er|^2/4 sum |<.|d.eps_r|e_i>|^2 / Delta_{i,r} + (same for b).
// The differential shift is defined as the level-energy difference up - down,
// i.e. twice the sigma_z coefficient it produces in the carrier Hamiltonian.
inline LightShifts raman_light_shifts(double e_r, double e_b,
                                      const std::vector<RamanLevel>& levels) {
    if (levels.empty()) throw ValidationError("raman_light_shifts: no excited levels supplied");
    LightShifts out;
    for (const auto& lvl : levels) {
        lvl.red.validate();
        lvl.blue.validate();
        out.down += e_r * e_r / 4.0 * std::norm(lvl.red.matrix_element_down) / lvl.red.detuning +
                    e_b * e_b / 4.0 * std::norm(lvl.blue.matrix_element_down) / lvl.blue.detuning;
        out.up += e_r * e_r / 4.0 * std::norm(lvl.red.matrix_element_up) / lvl.red.detuning +
                  e_b * e_b / 4.0 * std::norm(lvl.blue.matrix_element_up) / lvl.blue.detuning;
    }
    out.differential = out.up - out.down;
    return out;
}

// Electric quadrupole Rabi frequency (E0 / 2) |<S,m|(eps.r)(k.r)|D,m'>| in
// normalized units; linear in the field, unlike the bilinear Raman coupling.
inline double quadrupole_rabi(double e0, Complex quadrupole_element) {
    return 0.5 * e0 * std::abs(quadrupole_element);
}

// eta = k x0 with x0 = sqrt(1 / (2 m omega_m)) in hbar = 1 units.
inline double lamb_dicke_parameter(double k_effective, double mass, double trap_frequency) {
    if (mass <= 0 || trap_frequency <= 0) {
        throw ValidationError("lamb_dicke_parameter: mass and trap frequency must be > 0");
    }
    return std::abs(k_effective) * std::sqrt(1.0 / (2.0 * mass * trap_frequency));
}

// |(k_b - k_r) . axis| / |axis|: the wavevector difference of a Raman pair
// projected on the trap axis. Co-propagating beams give ~0.
inline double effective_wavevector(const Eigen::Vector3d& k_blue, const Eigen::Vector3d& k_red,
                                   const Eigen::Vector3d& trap_axis) {
    const double axis_norm = trap_axis.norm();
    if (axis_norm == 0) throw ValidationError("effective_wavevector: zero trap axis");
    return std::abs((k_blue - k_red).dot(trap_axis)) / axis_norm;
}

}  // namespace iontk::couplings

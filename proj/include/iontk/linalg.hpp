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

#include <cstdint>
#include <utility>
#include <vector>

#include "iontk/common.hpp"

namespace iontk::linalg {

// Largest Hilbert-space dimension the dense kernel will produce.
inline constexpr Eigen::Index kMaxDimension = 4096;

// Basis descriptor for a register of spins tensored with harmonic modes.
// Ordering convention: spin labels are lexicographic with "up" before
// "down" (up = 0, down = 1; spin 0 is the leftmost label), and Fock indices
// are innermost (fastest-varying), mode 0 outermost among the modes.
struct SpinFockSpace {
    int spin_count = 1;
    std::vector<int> fock_cutoffs;  // one per mode; may be empty (pure spins)

    SpinFockSpace() = default;
    SpinFockSpace(int spins, std::vector<int> cutoffs)
        : spin_count(spins), fock_cutoffs(std::move(cutoffs)) {
        if (spin_count < 0) throw ValidationError("SpinFockSpace: negative spin count");
        for (int c : fock_cutoffs) {
            if (c < 2) throw ValidationError("SpinFockSpace: Fock cutoff must be >= 2");
        }
        if (dimension() > kMaxDimension) {
            throw ValidationError("SpinFockSpace: dimension exceeds " +
                                  std::to_string(kMaxDimension));
        }
    }

    static SpinFockSpace single_ion(int cutoff) { return SpinFockSpace(1, {cutoff}); }

    Eigen::Index fock_dimension() const {
        Eigen::Index d = 1;
        for (int c : fock_cutoffs) d *= c;
        return d;
    }

    Eigen::Index dimension() const { return (Eigen::Index{1} << spin_count) * fock_dimension(); }

    // spin_bits: bit (spin_count-1-i) holds spin i, 0 = up, 1 = down.
    Eigen::Index index(std::uint32_t spin_bits, const std::vector<int>& fock) const {
        Eigen::Index f = 0;
        for (std::size_t m = 0; m < fock_cutoffs.size(); ++m) {
            f = f * fock_cutoffs[m] + fock[m];
        }
        return static_cast<Eigen::Index>(spin_bits) * fock_dimension() + f;
    }
};

// Kronecker product; dimensions multiply.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          Eigen::Index max_dimension = kMaxDimension) {
    if (a.rows() * b.rows() > max_dimension || a.cols() * b.cols() > max_dimension) {
        throw ValidationError("kron: result dimension exceeds " + std::to_string(max_dimension));
    }
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline double hermitian_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const ComplexMatrix& m) {
    return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

// exp(-i h t) for Hermitian h, via eigendecomposition; exact for all t.
inline ComplexMatrix propagator(const ComplexMatrix& h, double t) {
    if (h.rows() != h.cols()) throw ValidationError("propagator: matrix not square");
    double defect = hermitian_defect(h);
    if (defect > 1e-10) {
        throw ValidationError("propagator: generator not Hermitian, max asymmetry " +
                              std::to_string(defect));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((h + h.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw NumericalError("propagator: eigensolver failed");
    Eigen::VectorXcd phases =
        (Complex(0, -t) * es.eigenvalues().cast<Complex>().array()).exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Spectral data of a Hermitian generator, for evaluating exp(-i h t) at many t.
struct HermitianSpectrum {
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;

    explicit HermitianSpectrum(const ComplexMatrix& h) {
        if (hermitian_defect(h) > 1e-10) {
            throw ValidationError("HermitianSpectrum: generator not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((h + h.adjoint()) / 2.0);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        eigenvalues = es.eigenvalues();
        eigenvectors = es.eigenvectors();
    }

    StateVector evolve(const StateVector& psi, double t) const {
        Eigen::VectorXcd coeffs = eigenvectors.adjoint() * psi;
        coeffs.array() *= (Complex(0, -t) * eigenvalues.cast<Complex>().array()).exp();
        return eigenvectors * coeffs;
    }

    ComplexMatrix propagator(double t) const {
        Eigen::VectorXcd phases = (Complex(0, -t) * eigenvalues.cast<Complex>().array()).exp();
        return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
    }
};

// |<a|b>|^2; global-phase invariant.
inline double fidelity(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw ValidationError("fidelity: dimension mismatch");
    return std::norm(a.dot(b));
}

// Truncated ladder operators; a|n> = sqrt(n)|n-1>.
struct LadderPair {
    ComplexMatrix a;
    ComplexMatrix adag;
};

inline LadderPair ladder_operators(int cutoff) {
    if (cutoff < 2) throw ValidationError("ladder_operators: cutoff must be >= 2");
    ComplexMatrix a = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
    return {a, a.adjoint()};
}

// Marginal (P_up, P_down) for one spin, traced over every other factor.
inline std::pair<double, double> born_probabilities(const StateVector& psi,
                                                    const SpinFockSpace& space, int spin_index) {
    if (spin_index < 0 || spin_index >= space.spin_count) {
        throw ValidationError("born_probabilities: spin index out of range");
    }
    if (psi.size() != space.dimension()) {
        throw ValidationError("born_probabilities: state does not match space");
    }
    const Eigen::Index fock_dim = space.fock_dimension();
    const std::uint32_t bit = 1u << (space.spin_count - 1 - spin_index);
    double p_up = 0, p_down = 0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        const std::uint32_t spin_bits = static_cast<std::uint32_t>(i / fock_dim);
        ((spin_bits & bit) ? p_down : p_up) += std::norm(psi(i));
    }
    return {p_up, p_down};
}

// Population in the top two Fock levels, summed over modes. Truncation-error
// sentinel for every evolution routine.
inline double leakage(const StateVector& psi, const SpinFockSpace& space) {
    if (psi.size() != space.dimension()) throw ValidationError("leakage: state/space mismatch");
    double total = 0;
    const Eigen::Index fock_dim = space.fock_dimension();
    for (std::size_t m = 0; m < space.fock_cutoffs.size(); ++m) {
        Eigen::Index inner = 1;
        for (std::size_t k = m + 1; k < space.fock_cutoffs.size(); ++k) {
            inner *= space.fock_cutoffs[k];
        }
        const int cutoff = space.fock_cutoffs[m];
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            const Eigen::Index n = (i % fock_dim) / inner % cutoff;
            if (n >= cutoff - 2) total += std::norm(psi(i));
        }
    }
    return total;
}

inline void check_leakage(const StateVector& psi, const SpinFockSpace& space,
                          const std::string& where) {
    const double leak = leakage(psi, space);
    if (leak > kLeakageErrorThreshold) {
        throw NumericalError(where + ": Fock truncation leakage " + std::to_string(leak) +
                             " exceeds " + std::to_string(kLeakageErrorThreshold));
    }
    if (leak > kLeakageWarnThreshold) {
        warn(where + ": Fock truncation leakage " + std::to_string(leak));
    }
}

// Generalized Laguerre polynomial L_n^k(x) by the three-term recurrence.
inline double assoc_laguerre(int n, int k, double x) {
    if (n < 0 || k < 0) throw ValidationError("assoc_laguerre: negative degree or order");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + k - x;
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + k + 1.0 - x) * cur - (m + k) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Compares operators that are only defined up to a global phase:
// returns min over phases of max |a - e^{i phi} b|, using the phase of tr(a^dag b).
inline double deviation_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
    Complex tr = (a.adjoint() * b).trace();
    Complex phase = std::abs(tr) > 0 ? tr / std::abs(tr) : Complex(1, 0);
    return (a * phase - b).cwiseAbs().maxCoeff();
}

}  // namespace iontk::linalg

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

// Test-only brute-force oracles, kept independent of the closed-form code
// paths they check.

#pragma once

#include <cmath>
#include <complex>

#include "iontk/linalg.hpp"

namespace iontk::oracles {

// Generalized Laguerre polynomial by direct series summation,
// L_n^k(x) = sum_j (-1)^j binom(n + k, n - j) x^j / j!.
inline double laguerre_series(int n, int k, double x) {
    double sum = 0;
    for (int j = 0; j <= n; ++j) {
        double binom = 1;
        for (int i = 1; i <= n - j; ++i) binom *= double(k + j + i) / i;
        double term = binom;
        for (int i = 1; i <= j; ++i) term *= -x / i;
        sum += term;
    }
    return sum;
}

// |<n+s| e^{i eta (a + a^dag)} |n>| on a truncated ladder, by matrix
// exponential.
inline double recoil_element(int n, int s, double eta, int cutoff) {
    const auto [a, adag] = linalg::ladder_operators(cutoff);
    const ComplexMatrix e = linalg::propagator(-eta * (a + adag), 1.0);
    return std::abs(e(n + s, n));
}

// Coherent-state amplitudes up to the cutoff, by the stable ratio recursion.
inline StateVector coherent_state(Complex alpha, int cutoff) {
    StateVector psi(cutoff);
    psi(0) = std::exp(-std::norm(alpha) / 2.0);
    for (int n = 1; n < cutoff; ++n) psi(n) = psi(n - 1) * alpha / std::sqrt(double(n));
    return psi;
}

}  // namespace iontk::oracles

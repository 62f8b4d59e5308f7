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

#include <complex>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace iontk {

// Unit conventions used throughout the library:
//   hbar = 1, and the trap frequency sets the scale: omega_m = 1.
//   All frequencies are angular and expressed in units of omega_m;
//   times are in units of 1/omega_m. Physical units (MHz, mT, nm) appear
//   only in the species module, where they are stated per field.
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Bad inputs / violated preconditions. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Leakage past the Fock truncation, failed convergence, and similar
// runtime numerical failures. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Population allowed in the top two Fock levels before an evolution aborts
// (error) or emits a diagnostic (warn).
inline constexpr double kLeakageErrorThreshold = 1e-6;
inline constexpr double kLeakageWarnThreshold = 1e-8;

// Warnings go through a replaceable handler so library output streams stay
// deterministic; the default writes a single line to stderr.
inline std::function<void(const std::string&)>& warning_handler() {
    static std::function<void(const std::string&)> handler = [](const std::string& msg) {
        std::cerr << "iontk: warning: " << msg << "\n";
    };
    return handler;
}

inline void warn(const std::string& msg) {
    warning_handler()(msg);
}

}  // namespace iontk

// SPDX-License-Identifier: Apache-2.0
//
// memsic: behavioral simulator of a memristor-crossbar massive MIMO SIC detector
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MEMSIC_ERRORS_HPP
#define MEMSIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace memsic {

// Invalid or unsupported configuration (bad modulation order, malformed
// config file, non-monotone slicer levels, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Input is structurally valid but numerically degenerate (zero channel
// column, all-zero matrix to map, ...).
class DegenerateInputError : public std::runtime_error {
public:
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

// A linear system that must be solved has no unique solution.
class SingularSystemError : public std::runtime_error {
public:
    explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

// The requested feedback-conductance product cannot be realized inside the
// device conductance range. The message names the violated bound.
class CalibrationError : public std::runtime_error {
public:
    explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

// A multiplexer select word that cannot occur with ideal comparators
// (non-thermometer comparator output).
class InvalidSelectError : public std::logic_error {
public:
    explicit InvalidSelectError(const std::string& what) : std::logic_error(what) {}
};

} // namespace memsic

#endif // MEMSIC_ERRORS_HPP

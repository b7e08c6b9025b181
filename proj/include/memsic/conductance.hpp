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

#ifndef MEMSIC_CONDUCTANCE_HPP
#define MEMSIC_CONDUCTANCE_HPP

#include "memsic/errors.hpp"
#include "memsic/types.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace memsic {

// Achievable device conductance window, siemens.
struct ConductanceRange {
    double g_min = 0.1e-6;
    double g_max = 30e-6;

    void validate() const {
        if (!(0.0 < g_min && g_min < g_max))
            throw ConfigError("conductance range requires 0 < g_min < g_max");
    }
    bool contains(double g) const { return g >= g_min && g <= g_max; }
    double midpoint() const { return (g_min + g_max) / 2.0; }
};

inline constexpr ConductanceRange default_conductance_range() { return {0.1e-6, 30e-6}; }

// A signed matrix realized as the difference of two in-range conductance
// arrays: g_plus - g_minus = scale * source. Positive entries anchor
// g_plus at g_max, nonpositive entries at g_min.
struct MappedMatrix {
    RealMatrix g_plus;  // siemens
    RealMatrix g_minus; // siemens
    double scale = 0.0; // siemens per source-matrix unit

    Index rows() const { return g_plus.rows(); }
    Index cols() const { return g_plus.cols(); }
    RealMatrix difference() const { return g_plus - g_minus; }
};

inline MappedMatrix map_matrix(const RealMatrix& source, const ConductanceRange& range) {
    range.validate();
    if (!source.allFinite())
        throw std::invalid_argument("map_matrix: source matrix must be finite");
    const double peak = source.cwiseAbs().maxCoeff();
    if (peak == 0.0)
        throw DegenerateInputError("map_matrix: all-zero matrix has no mapping scale");

    MappedMatrix mapped;
    mapped.scale = (range.g_max - range.g_min) / peak;
    mapped.g_plus = (source.array() > 0.0)
                        .select(RealMatrix::Constant(source.rows(), source.cols(), range.g_max),
                                RealMatrix::Constant(source.rows(), source.cols(), range.g_min));
    mapped.g_minus = mapped.g_plus - mapped.scale * source;
    return mapped;
}

/// Mapping with an explicitly reduced scale. Any scale up to the full-swing
/// value (g_max - g_min) / max|source| keeps both arrays in range; smaller
/// scales trade conductance swing for programmability of other devices.
inline MappedMatrix map_matrix(const RealMatrix& source, const ConductanceRange& range,
                               double scale) {
    MappedMatrix mapped = map_matrix(source, range);
    if (!(scale > 0.0) || scale > mapped.scale)
        throw std::invalid_argument("map_matrix: scale must be in (0, full-swing scale]");
    mapped.scale = scale;
    mapped.g_minus = mapped.g_plus - scale * source;
    return mapped;
}

/// Rounds a conductance to the nearest of 2^bits uniformly spaced levels
/// spanning [g_min, g_max], endpoints included. Empty bits means ideal
/// (continuous) programming and returns the input unchanged.
inline double quantize_conductance(double g, std::optional<int> bits,
                                   const ConductanceRange& range) {
    if (!bits)
        return g;
    if (*bits < 1)
        throw std::invalid_argument("quantize_conductance: bit depth must be >= 1");
    range.validate();
    const double slack = 1e-12 * (range.g_max - range.g_min);
    if (g < range.g_min - slack || g > range.g_max + slack)
        throw std::invalid_argument("quantize_conductance: value outside conductance range");
    if (*bits >= 53) // step below double precision
        return g;

    const double levels = static_cast<double>((1LL << *bits) - 1);
    const double step = (range.g_max - range.g_min) / levels;
    double idx = std::round((g - range.g_min) / step);
    idx = std::min(std::max(idx, 0.0), levels);
    return range.g_min + idx * step;
}

inline MappedMatrix quantize_conductance(MappedMatrix mapped, std::optional<int> bits,
                                         const ConductanceRange& range) {
    if (!bits)
        return mapped;
    auto round_one = [&](double g) { return quantize_conductance(g, bits, range); };
    mapped.g_plus = mapped.g_plus.unaryExpr(round_one);
    mapped.g_minus = mapped.g_minus.unaryExpr(round_one);
    return mapped;
}

} // namespace memsic

#endif // MEMSIC_CONDUCTANCE_HPP

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

#ifndef MEMSIC_CONSTELLATION_HPP
#define MEMSIC_CONSTELLATION_HPP

#include "memsic/errors.hpp"
#include "memsic/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace memsic {

constexpr unsigned gray_encode(unsigned index) { return index ^ (index >> 1); }

constexpr unsigned gray_decode(unsigned code) {
    unsigned value = 0;
    for (; code; code >>= 1)
        value ^= code;
    return value;
}

/// Midpoint between two adjacent levels. Shared by the ideal slicing rule
/// and the comparator threshold generator so both resolve ties identically.
inline double level_midpoint(double lo, double hi) { return (lo + hi) / 2.0; }

/// Index of the level closest to x, lower level on an exact midpoint tie.
/// Equivalent to counting how many midpoints x strictly exceeds, which is
/// what a bank of strict greater-than comparators computes.
template <typename Derived>
Index nearest_level_index(double x, const Eigen::MatrixBase<Derived>& levels) {
    Index idx = 0;
    while (idx + 1 < levels.size() && x > level_midpoint(levels(idx), levels(idx + 1)))
        ++idx;
    return idx;
}

// Gray-mapped square QAM alphabet. `points` is indexed by the bit label
// (in-phase bits first, most significant bit first) and normalized to unit
// average symbol energy. `axis_levels` holds the per-axis amplitudes of
// that normalized alphabet; `s_value` holds the same levels expressed as
// voltages, scaled by the reference voltage v0.
struct Constellation {
    int order = 0;
    double reference_voltage = 0.0; // v0, volts
    RealVector axis_levels;         // W normalized levels, ascending
    RealVector s_value;             // axis_levels * v0, volts
    ComplexVector points;           // order entries, indexed by bit label

    int bits_per_axis() const {
        int m = 0;
        while ((1 << (m + 1)) < static_cast<int>(axis_levels.size()) + 1)
            ++m;
        return m;
    }
    int bits_per_symbol() const { return 2 * bits_per_axis(); }
    Index levels_per_axis() const { return axis_levels.size(); } // W
};

inline Constellation build_constellation(int order, double reference_voltage) {
    if (order != 4 && order != 16 && order != 64)
        throw ConfigError("unsupported modulation order " + std::to_string(order) +
                          " (expected 4, 16 or 64)");
    if (!(reference_voltage > 0.0))
        throw ConfigError("reference voltage must be positive");

    const int w = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    const int bits_per_axis = static_cast<int>(std::lround(std::log2(w)));

    // odd-integer grid +-1, +-3, ... scaled to E[|s|^2] = 1
    const double scale = std::sqrt(3.0 / (2.0 * (order - 1)));

    Constellation c;
    c.order = order;
    c.reference_voltage = reference_voltage;
    c.axis_levels.resize(w);
    for (int i = 0; i < w; ++i)
        c.axis_levels(i) = (2 * i - (w - 1)) * scale;
    c.s_value = c.axis_levels * reference_voltage;

    c.points.resize(order);
    for (unsigned label = 0; label < static_cast<unsigned>(order); ++label) {
        const unsigned label_i = label >> bits_per_axis;
        const unsigned label_q = label & ((1u << bits_per_axis) - 1u);
        c.points(label) = Complex(c.axis_levels(gray_decode(label_i)),
                                  c.axis_levels(gray_decode(label_q)));
    }
    return c;
}

/// Maps groups of log2(order) bits (MSB first, in-phase axis first) to
/// normalized constellation points.
inline ComplexVector modulate_bits(const std::vector<std::uint8_t>& bits, const Constellation& c) {
    const int bps = c.bits_per_symbol();
    if (bits.size() % static_cast<std::size_t>(bps) != 0)
        throw std::invalid_argument("bit count is not a multiple of bits per symbol");

    const Index count = static_cast<Index>(bits.size()) / bps;
    ComplexVector symbols(count);
    for (Index s = 0; s < count; ++s) {
        unsigned label = 0;
        for (int b = 0; b < bps; ++b)
            label = (label << 1) | (bits[static_cast<std::size_t>(s) * bps + b] ? 1u : 0u);
        symbols(s) = c.points(label);
    }
    return symbols;
}

/// Inverse of modulate_bits. Inputs must be exact constellation points.
inline std::vector<std::uint8_t> demap_bits(const ComplexVector& symbols, const Constellation& c) {
    const int m = c.bits_per_axis();
    const double tol = 1e-9 * c.axis_levels.cwiseAbs().maxCoeff();

    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(symbols.size()) * c.bits_per_symbol());
    for (Index s = 0; s < symbols.size(); ++s) {
        const Index idx_i = nearest_level_index(symbols(s).real(), c.axis_levels);
        const Index idx_q = nearest_level_index(symbols(s).imag(), c.axis_levels);
        if (std::abs(symbols(s).real() - c.axis_levels(idx_i)) > tol ||
            std::abs(symbols(s).imag() - c.axis_levels(idx_q)) > tol)
            throw std::invalid_argument("demap_bits: input is not a constellation point");

        const unsigned label_i = gray_encode(static_cast<unsigned>(idx_i));
        const unsigned label_q = gray_encode(static_cast<unsigned>(idx_q));
        for (int b = m - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((label_i >> b) & 1u));
        for (int b = m - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((label_q >> b) & 1u));
    }
    return bits;
}

} // namespace memsic

#endif // MEMSIC_CONSTELLATION_HPP

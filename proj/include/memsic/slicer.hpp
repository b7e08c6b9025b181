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
//
// Bit-exact behavioral model of the hybrid analog-digital slicer. A bank
// of W-1 strict greater-than comparators produces a thermometer word p;
// the word drives an analog multiplexer whose channels carry the W level
// voltages, either directly (select lines = p, 2^(W-1) channels) or after
// combinational compression to log2(W) bits (W channels). An output
// voltage follower is modeled as identity.

#ifndef MEMSIC_SLICER_HPP
#define MEMSIC_SLICER_HPP

#include "memsic/constellation.hpp"
#include "memsic/errors.hpp"
#include "memsic/types.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace memsic {

enum class SlicerStructure { direct_select, indirect_select };

inline const char* to_string(SlicerStructure s) {
    return s == SlicerStructure::direct_select ? "direct" : "indirect";
}

// Comparator bank output: p[w] = 1 iff the input strictly exceeds
// threshold w. With ascending thresholds this is a thermometer code.
struct ComparatorWord {
    std::vector<int> bits;

    int weight() const {
        int w = 0;
        for (int b : bits)
            w += b;
        return w;
    }
    bool is_thermometer() const {
        for (std::size_t i = 1; i < bits.size(); ++i)
            if (bits[i] > bits[i - 1])
                return false;
        return true;
    }
};

// Compressed select word, log2(W) bits, bit 0 least significant.
struct CompressedWord {
    std::vector<int> bits;
};

/// Midpoints between consecutive levels.
inline RealVector make_thresholds(const RealVector& levels) {
    if (levels.size() < 2)
        throw ConfigError("make_thresholds: at least two levels required");
    for (Index i = 1; i < levels.size(); ++i)
        if (!(levels(i) > levels(i - 1)))
            throw ConfigError("make_thresholds: levels must be strictly increasing");

    RealVector thresholds(levels.size() - 1);
    for (Index i = 0; i + 1 < levels.size(); ++i)
        thresholds(i) = level_midpoint(levels(i), levels(i + 1));
    return thresholds;
}

inline ComparatorWord comparator_bank(double v_in, const RealVector& thresholds) {
    ComparatorWord p;
    p.bits.resize(static_cast<std::size_t>(thresholds.size()));
    for (Index w = 0; w < thresholds.size(); ++w)
        p.bits[static_cast<std::size_t>(w)] = v_in > thresholds(w) ? 1 : 0;
    return p;
}

/// Channel selected when the comparator outputs drive the multiplexer
/// select lines directly (bit 0 least significant): a thermometer word of
/// weight w selects channel 2^w - 1 of a 2^(W-1)-channel multiplexer.
inline Index direct_select_index(const ComparatorWord& p) {
    if (!p.is_thermometer())
        throw InvalidSelectError("direct_select_index: non-thermometer comparator word");
    return (Index{1} << p.weight()) - 1;
}

/// Compresses the thermometer word to log2(W) select bits. For W = 4 this
/// is the two-gate network q0 = p1, q1 = p0 AND NOT p2; for other widths
/// the plain binary encoding of the thermometer weight is used.
inline CompressedWord logic_compress(const ComparatorWord& p) {
    if (!p.is_thermometer())
        throw InvalidSelectError("logic_compress: non-thermometer comparator word");

    CompressedWord q;
    if (p.bits.size() == 3) {
        q.bits = {p.bits[1], p.bits[0] & (1 - p.bits[2])};
        return q;
    }
    std::size_t select_bits = 0;
    while ((std::size_t{1} << select_bits) < p.bits.size() + 1)
        ++select_bits;
    const int weight = p.weight();
    q.bits.resize(select_bits);
    for (std::size_t i = 0; i < select_bits; ++i)
        q.bits[i] = (weight >> i) & 1;
    return q;
}

/// Channel selected by a compressed word on a W-channel multiplexer,
/// bit 0 least significant.
inline Index indirect_select_index(const CompressedWord& q) {
    Index idx = 0;
    for (std::size_t i = 0; i < q.bits.size(); ++i)
        idx |= static_cast<Index>(q.bits[i]) << i;
    return idx;
}

// Fully wired slicer: level set, thresholds, and the multiplexer channel
// loading for both structures. direct_map / indirect_map give the level
// index wired to each multiplexer channel, -1 for unconnected channels.
struct SlicerConfig {
    RealVector levels;     // S_value, ascending, volts
    RealVector thresholds; // W-1 midpoints
    SlicerStructure structure = SlicerStructure::indirect_select;
    double reference_voltage = 0.0;
    std::vector<int> direct_map;   // 2^(W-1) channels
    std::vector<int> indirect_map; // W channels

    Index levels_count() const { return levels.size(); }
    Index mux_channel_count() const {
        return structure == SlicerStructure::direct_select
                   ? static_cast<Index>(direct_map.size())
                   : static_cast<Index>(indirect_map.size());
    }
};

inline ComparatorWord thermometer_word(int weight, Index levels_count) {
    ComparatorWord p;
    p.bits.resize(static_cast<std::size_t>(levels_count - 1));
    for (Index i = 0; i < levels_count - 1; ++i)
        p.bits[static_cast<std::size_t>(i)] = i < weight ? 1 : 0;
    return p;
}

inline SlicerConfig make_slicer(const RealVector& levels, SlicerStructure structure,
                                double reference_voltage) {
    const Index w_count = levels.size();
    if (w_count < 2 || (w_count & (w_count - 1)) != 0)
        throw ConfigError("make_slicer: level count must be a power of two and >= 2");

    SlicerConfig cfg;
    cfg.levels = levels;
    cfg.thresholds = make_thresholds(levels);
    cfg.structure = structure;
    cfg.reference_voltage = reference_voltage;

    cfg.direct_map.assign(std::size_t{1} << (w_count - 1), -1);
    cfg.indirect_map.assign(static_cast<std::size_t>(w_count), -1);
    for (int w = 0; w < w_count; ++w) {
        const ComparatorWord p = thermometer_word(w, w_count);
        cfg.direct_map[static_cast<std::size_t>(direct_select_index(p))] = w;
        cfg.indirect_map[static_cast<std::size_t>(indirect_select_index(logic_compress(p)))] = w;
    }
    return cfg;
}

inline SlicerConfig make_slicer(const Constellation& c, SlicerStructure structure) {
    return make_slicer(c.s_value, structure, c.reference_voltage);
}

/// Runs the full comparator -> select -> multiplexer path and returns the
/// index of the selected level.
inline Index slicer_select(double v_in, const SlicerConfig& cfg) {
    const ComparatorWord p = comparator_bank(v_in, cfg.thresholds);
    int level_index = -1;
    if (cfg.structure == SlicerStructure::direct_select)
        level_index = cfg.direct_map[static_cast<std::size_t>(direct_select_index(p))];
    else
        level_index = cfg.indirect_map[static_cast<std::size_t>(
            indirect_select_index(logic_compress(p)))];
    if (level_index < 0)
        throw InvalidSelectError("slicer_select: selected an unconnected multiplexer channel");
    return level_index;
}

/// Output voltage of the slicer: the level closest to the input, lower
/// level on an exact threshold hit (strict comparators).
inline double slicer_eval(double v_in, const SlicerConfig& cfg) {
    return cfg.levels(slicer_select(v_in, cfg));
}

struct TruthRow {
    std::string interval;             // e.g. "< z1", "z1 ~ z2", "> z3"
    ComparatorWord p;
    std::optional<CompressedWord> q;  // present for the indirect structure
    int level_index = 0;
    double output = 0.0;              // volts
};

/// One row per cell of the threshold partition.
inline std::vector<TruthRow> truth_table(const SlicerConfig& cfg) {
    const Index w_count = cfg.levels_count();
    std::vector<TruthRow> rows;
    rows.reserve(static_cast<std::size_t>(w_count));
    for (int w = 0; w < w_count; ++w) {
        TruthRow row;
        if (w == 0)
            row.interval = "< z1";
        else if (w == w_count - 1)
            row.interval = "> z" + std::to_string(w_count - 1);
        else
            row.interval = "z" + std::to_string(w) + " ~ z" + std::to_string(w + 1);
        row.p = thermometer_word(w, w_count);
        if (cfg.structure == SlicerStructure::indirect_select)
            row.q = logic_compress(row.p);
        row.level_index = w;
        row.output = cfg.levels(w);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace memsic

#endif // MEMSIC_SLICER_HPP

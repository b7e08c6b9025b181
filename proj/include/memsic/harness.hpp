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

#ifndef MEMSIC_HARNESS_HPP
#define MEMSIC_HARNESS_HPP

#include "memsic/channel.hpp"
#include "memsic/conductance.hpp"
#include "memsic/perf.hpp"
#include "memsic/slicer.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace memsic {

// One entry of the precision sweep: the exact digital path, or the analog
// pipeline at a memristor bit depth (empty bits = ideal conductances).
struct PrecisionSetting {
    enum class Kind { digital, analog };
    Kind kind = Kind::analog;
    std::optional<int> bits;

    static PrecisionSetting digital() { return {Kind::digital, std::nullopt}; }
    static PrecisionSetting analog(std::optional<int> bits) { return {Kind::analog, bits}; }
    std::string label() const;
};

PrecisionSetting parse_precision(const std::string& token);

struct ExperimentConfig {
    MimoConfig mimo;                // noise_variance is set per SNR point
    std::vector<double> snr_db;     // SNR = K / noise_variance, in dB
    std::vector<PrecisionSetting> precisions;
    long long trials = 1;           // per (snr, precision) point
    long long target_errors = 0;    // > 0: stop a point early once every
                                    // precision reached this many bit errors
    std::uint64_t seed = 1;
    int threads = 1;
    SlicerStructure structure = SlicerStructure::indirect_select;
    ConductanceRange range;
    double reference_voltage = 0.1; // v0, volts
    double voltage_ceiling = default_voltage_ceiling;
    std::string out_csv;            // empty: no file
    std::string plot_stem;          // empty: no plot files

    void validate() const;
};

struct BerRecord {
    double snr_db = 0.0;
    std::string precision;
    long long bits_sent = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    double wall_time = 0.0; // seconds spent on the SNR point (not in CSV output)
};

/// Monte Carlo sweep over (SNR, precision). Every trial draws one channel,
/// one symbol vector and one noise vector from a seed derived from
/// (seed, snr index, trial index), so all precision settings of a point
/// see identical randomness and results merge deterministically under any
/// thread count. Writes the sweep CSV when out_csv is set and plot files
/// when plot_stem is set.
std::vector<BerRecord> ber_sweep(const ExperimentConfig& cfg, std::ostream& log);

// sweep CSV, schema v1: snr_db,precision,bits_sent,bit_errors,ber
void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records);
std::vector<BerRecord> read_ber_csv(const std::string& path);

/// Plot-ready emission: <stem>.csv with columns snr_db,precision,ber and
/// <stem>.svg with log-scale BER curves (one polyline per precision).
void emit_plot_data(const std::vector<BerRecord>& records, const std::string& stem);

/// Stage-by-stage trace of a noise-free 4x4 detection at ideal precision,
/// with the digital reference computed alongside.
void run_demo(std::ostream& os, int modulation_order = 16,
              SlicerStructure structure = SlicerStructure::indirect_select);

// --- key-value config files -------------------------------------------
//
// Line format: key = value, '#' starts a comment, lists are
// comma-separated. Unknown keys are rejected.

class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_text(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::vector<std::string> get_list(const std::string& key) const;

    // throws ConfigError listing any key never requested by a getter
    void reject_unknown_keys() const;

private:
    std::string origin_;
    std::vector<std::pair<std::string, std::string>> entries_;
    mutable std::vector<bool> used_;
};

ExperimentConfig experiment_from_config(const KeyValueConfig& kv);
TimingParams timing_from_config(const KeyValueConfig& kv);
EnergyParams energy_from_config(const KeyValueConfig& kv);

} // namespace memsic

#endif // MEMSIC_HARNESS_HPP

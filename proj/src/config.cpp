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

#include "memsic/harness.hpp"

#include "memsic/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace memsic {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
        --end;
    return s.substr(begin, end - begin);
}

double parse_double_token(const std::string& raw, const std::string& what) {
    try {
        std::size_t consumed = 0;
        const double value = std::stod(raw, &consumed);
        if (consumed != raw.size())
            throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a number: '" + raw + "'");
    }
}

} // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path);
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        for (const auto& entry : cfg.entries_)
            if (entry.first == key)
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
        cfg.entries_.emplace_back(key, value);
    }
    cfg.used_.assign(cfg.entries_.size(), false);
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].first == key) {
            used_[i] = true;
            return true;
        }
    }
    return false;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].first == key) {
            used_[i] = true;
            return entries_[i].second;
        }
    }
    return fallback;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty())
        return fallback;
    try {
        std::size_t consumed = 0;
        const double value = std::stod(raw, &consumed);
        if (consumed != raw.size())
            throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key '" + key + "': not a number: '" + raw + "'");
    }
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty())
        return fallback;
    try {
        std::size_t consumed = 0;
        const long long value = std::stoll(raw, &consumed);
        if (consumed != raw.size())
            throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key '" + key + "': not an integer: '" + raw + "'");
    }
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key) const {
    const std::string raw = get_string(key, "");
    std::vector<std::string> items;
    if (raw.empty())
        return items;
    std::istringstream in(raw);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty())
            items.push_back(item);
    }
    return items;
}

void KeyValueConfig::reject_unknown_keys() const {
    std::string unknown;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!used_[i]) {
            if (!unknown.empty())
                unknown += ", ";
            unknown += "'" + entries_[i].first + "'";
        }
    }
    if (!unknown.empty())
        throw ConfigError(origin_ + ": unknown key(s): " + unknown);
}

std::string PrecisionSetting::label() const {
    if (kind == Kind::digital)
        return "digital";
    if (!bits)
        return "inf";
    return std::to_string(*bits);
}

PrecisionSetting parse_precision(const std::string& token) {
    if (token == "digital")
        return PrecisionSetting::digital();
    if (token == "inf" || token == "ideal")
        return PrecisionSetting::analog(std::nullopt);
    try {
        std::size_t consumed = 0;
        const int bits = std::stoi(token, &consumed);
        if (consumed != token.size() || bits < 1)
            throw std::invalid_argument(token);
        return PrecisionSetting::analog(bits);
    } catch (const std::exception&) {
        throw ConfigError("invalid precision token '" + token +
                          "' (expected a bit count, 'inf' or 'digital')");
    }
}

void ExperimentConfig::validate() const {
    mimo.validate();
    if (snr_db.empty())
        throw ConfigError("experiment needs at least one SNR point");
    if (precisions.empty())
        throw ConfigError("experiment needs at least one precision setting");
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (target_errors < 0)
        throw ConfigError("target_errors must be >= 0");
    if (threads < 1)
        throw ConfigError("threads must be >= 1");
    range.validate();
    if (!(reference_voltage > 0.0))
        throw ConfigError("reference voltage must be positive");
}

ExperimentConfig experiment_from_config(const KeyValueConfig& kv) {
    ExperimentConfig cfg;

    const Index users = static_cast<Index>(kv.get_int("num_users", 8));
    const Index antennas = static_cast<Index>(kv.get_int("num_bs_antennas", 16));
    const int order = static_cast<int>(kv.get_int("modulation_order", 16));
    cfg.mimo = MimoConfig::uniform(users, antennas, order);

    for (const std::string& item : kv.get_list("snr_db"))
        cfg.snr_db.push_back(parse_double_token(item, "snr_db"));
    if (cfg.snr_db.empty())
        cfg.snr_db = {10.0, 13.0, 16.0};

    for (const std::string& item : kv.get_list("precision"))
        cfg.precisions.push_back(parse_precision(item));
    if (cfg.precisions.empty())
        cfg.precisions = {PrecisionSetting::analog(4), PrecisionSetting::analog(6),
                          PrecisionSetting::analog(8), PrecisionSetting::digital()};

    cfg.trials = kv.get_int("trials", 20000);
    cfg.target_errors = kv.get_int("target_errors", 0);
    cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 1));
    cfg.threads = static_cast<int>(kv.get_int("threads", 1));

    const std::string structure = kv.get_string("structure", "indirect");
    if (structure == "direct")
        cfg.structure = SlicerStructure::direct_select;
    else if (structure == "indirect")
        cfg.structure = SlicerStructure::indirect_select;
    else
        throw ConfigError("structure must be 'direct' or 'indirect', got '" + structure + "'");

    cfg.range.g_min = kv.get_double("g_min_uS", 0.1) * 1e-6;
    cfg.range.g_max = kv.get_double("g_max_uS", 30.0) * 1e-6;
    cfg.reference_voltage = kv.get_double("v0", 0.1);
    cfg.voltage_ceiling = kv.get_double("voltage_ceiling", default_voltage_ceiling);
    cfg.out_csv = kv.get_string("out", "");
    cfg.plot_stem = kv.get_string("plot", "");

    cfg.validate();
    return cfg;
}

TimingParams timing_from_config(const KeyValueConfig& kv) {
    TimingParams params;
    params.t2 = kv.get_double("t2_ns", params.t2 * 1e9) * 1e-9;
    params.comparator_delay = kv.get_double("comparator_ns", params.comparator_delay * 1e9) * 1e-9;
    params.mux_delay = kv.get_double("mux_ns", params.mux_delay * 1e9) * 1e-9;
    params.dac_settle = kv.get_double("dac_ns", params.dac_settle * 1e9) * 1e-9;
    params.adc_delay = kv.get_double("adc_ns", params.adc_delay * 1e9) * 1e-9;
    params.oa_gbp = kv.get_double("oa_gbp_mhz", params.oa_gbp / 1e6) * 1e6;
    params.validate();
    return params;
}

EnergyParams energy_from_config(const KeyValueConfig& kv) {
    EnergyParams params;
    params.powers.oa = kv.get_double("oa_uW", params.powers.oa * 1e6) * 1e-6;
    params.powers.comparator = kv.get_double("comparator_mW", params.powers.comparator * 1e3) * 1e-3;
    params.powers.mux = kv.get_double("mux_uW", params.powers.mux * 1e6) * 1e-6;
    params.powers.adc = kv.get_double("adc_mW", params.powers.adc * 1e3) * 1e-3;
    params.powers.dac = kv.get_double("dac_mW", params.powers.dac * 1e3) * 1e-3;
    if (params.powers.oa < 0 || params.powers.comparator < 0 || params.powers.mux < 0 ||
        params.powers.adc < 0 || params.powers.dac < 0)
        throw ConfigError("component powers must be nonnegative");
    return params;
}

} // namespace memsic

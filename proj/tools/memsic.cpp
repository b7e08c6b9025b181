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

#include "memsic/detector.hpp"
#include "memsic/harness.hpp"
#include "memsic/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

namespace {

memsic::SlicerStructure parse_structure(const std::string& name) {
    if (name == "direct")
        return memsic::SlicerStructure::direct_select;
    if (name == "indirect")
        return memsic::SlicerStructure::indirect_select;
    throw memsic::ConfigError("structure must be 'direct' or 'indirect', got '" + name + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"memristor-crossbar massive MIMO SIC detector simulator"};
    app.require_subcommand(1);

    // ber-sweep
    std::string sweep_config;
    std::optional<std::uint64_t> sweep_seed;
    std::optional<int> sweep_threads;
    std::optional<std::string> sweep_out, sweep_plot;
    auto* sweep = app.add_subcommand(
        "ber-sweep", "Monte Carlo BER sweep over SNR and memristor precision. SNR is defined "
                     "as K / noise_variance (total received signal power per antenna over "
                     "noise power).");
    sweep->add_option("--config", sweep_config, "key = value experiment file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("--seed", sweep_seed, "override config seed");
    sweep->add_option("--threads", sweep_threads, "override config thread count");
    sweep->add_option("--out", sweep_out, "override sweep CSV path");
    sweep->add_option("--plot", sweep_plot, "write <stem>.csv and <stem>.svg plot data");

    // timing
    int timing_users = 32;
    std::string timing_config, timing_csv;
    auto* timing = app.add_subcommand("timing", "convergence-time breakdown");
    timing->add_option("--users", timing_users, "number of detection stages K")
        ->check(CLI::PositiveNumber);
    timing->add_option("--config", timing_config, "key = value parameter file")
        ->check(CLI::ExistingFile);
    timing->add_option("--csv", timing_csv, "also write the breakdown as CSV");

    // energy
    int energy_users = 32, energy_antennas = 64, energy_order = 16, energy_bits = 6;
    double energy_snr_db = 20.0;
    std::uint64_t energy_seed = 1;
    std::string energy_config, energy_csv, energy_comparison_csv;
    auto* energy = app.add_subcommand(
        "energy", "energy / speed / efficiency report with processor comparison");
    energy->add_option("--users", energy_users)->check(CLI::PositiveNumber);
    energy->add_option("--antennas", energy_antennas)->check(CLI::PositiveNumber);
    energy->add_option("--order", energy_order, "modulation order (4, 16, 64)");
    energy->add_option("--bits", energy_bits, "memristor bit depth, 0 = ideal");
    energy->add_option("--snr-db", energy_snr_db, "operating point SNR");
    energy->add_option("--seed", energy_seed, "channel realization seed");
    energy->add_option("--config", energy_config, "key = value parameter file")
        ->check(CLI::ExistingFile);
    energy->add_option("--csv", energy_csv, "write the report as CSV");
    energy->add_option("--comparison-csv", energy_comparison_csv,
                       "write the processor comparison as CSV");

    // slicer-table
    int table_order = 16;
    double table_v0 = 0.1;
    std::string table_structure = "indirect", table_csv;
    auto* table = app.add_subcommand("slicer-table", "slicer truth table");
    table->add_option("--order", table_order, "modulation order (4, 16, 64)");
    table->add_option("--structure", table_structure, "direct | indirect");
    table->add_option("--v0", table_v0, "reference voltage, volts");
    table->add_option("--csv", table_csv, "also write the table as CSV");

    // demo
    int demo_order = 16;
    std::string demo_structure = "indirect";
    auto* demo = app.add_subcommand("demo", "stage-by-stage noise-free 4x4 trace");
    demo->add_option("--order", demo_order, "modulation order (4, 16, 64)");
    demo->add_option("--structure", demo_structure, "direct | indirect");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            auto kv = memsic::KeyValueConfig::parse_file(sweep_config);
            auto cfg = memsic::experiment_from_config(kv);
            kv.reject_unknown_keys();
            if (sweep_seed)
                cfg.seed = *sweep_seed;
            if (sweep_threads)
                cfg.threads = *sweep_threads;
            if (sweep_out)
                cfg.out_csv = *sweep_out;
            if (sweep_plot)
                cfg.plot_stem = *sweep_plot;
            cfg.validate();
            memsic::ber_sweep(cfg, std::cout);
        } else if (timing->parsed()) {
            memsic::TimingParams params;
            if (!timing_config.empty()) {
                auto kv = memsic::KeyValueConfig::parse_file(timing_config);
                params = memsic::timing_from_config(kv);
                memsic::energy_from_config(kv); // shared parameter file
                kv.reject_unknown_keys();
            }
            memsic::print_timing(std::cout, timing_users, params);
            if (!timing_csv.empty())
                memsic::write_timing_csv(timing_csv, timing_users, params);
        } else if (energy->parsed()) {
            memsic::TimingParams timing_params;
            memsic::EnergyParams energy_params;
            if (!energy_config.empty()) {
                auto kv = memsic::KeyValueConfig::parse_file(energy_config);
                timing_params = memsic::timing_from_config(kv);
                energy_params = memsic::energy_from_config(kv);
                kv.reject_unknown_keys();
            }

            const auto mimo = memsic::MimoConfig::uniform(energy_users, energy_antennas,
                                                          energy_order);
            const auto constellation = memsic::build_constellation(energy_order, 0.1);
            const double noise_variance =
                static_cast<double>(energy_users) / std::pow(10.0, energy_snr_db / 10.0);

            memsic::Rng rng(memsic::mix_seed(energy_seed, 0x656e6572));
            const auto chan = memsic::generate_channel(mimo, rng);
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(mimo.num_users) *
                                           constellation.bits_per_symbol());
            for (auto& b : bits)
                b = rng.coin() ? 1 : 0;
            const auto symbols = memsic::modulate_bits(bits, constellation);
            const auto rx = memsic::transmit(chan, symbols, noise_variance, rng);

            std::optional<int> bit_depth;
            if (energy_bits > 0)
                bit_depth = energy_bits;
            const auto det = memsic::build_detector(
                chan, noise_variance, constellation, memsic::default_conductance_range(),
                bit_depth, memsic::SlicerStructure::indirect_select);
            const auto run = memsic::detect(det, rx.y);

            const auto report =
                memsic::make_perf_report(det, run.stage_io, timing_params, energy_params);
            memsic::print_perf_report(std::cout, report);
            std::cout << "\n" << memsic::comparison_table({&report, 1});
            if (!energy_csv.empty())
                memsic::write_perf_csv(energy_csv, report);
            if (!energy_comparison_csv.empty())
                memsic::write_comparison_csv(energy_comparison_csv, {&report, 1});
        } else if (table->parsed()) {
            const auto constellation = memsic::build_constellation(table_order, table_v0);
            const auto cfg =
                memsic::make_slicer(constellation, parse_structure(table_structure));
            memsic::print_truth_table(std::cout, cfg);
            if (!table_csv.empty())
                memsic::write_truth_table_csv(table_csv, cfg);
        } else if (demo->parsed()) {
            memsic::run_demo(std::cout, demo_order, parse_structure(demo_structure));
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}

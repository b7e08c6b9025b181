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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace memsic;

namespace {

ExperimentConfig tiny_experiment() {
    ExperimentConfig cfg;
    cfg.mimo = MimoConfig::uniform(2, 4, 4);
    cfg.snr_db = {8.0, 12.0};
    cfg.precisions = {PrecisionSetting::digital(), PrecisionSetting::analog(std::nullopt)};
    cfg.trials = 60;
    cfg.seed = 5;
    cfg.threads = 1;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("key-value parsing handles comments, lists and errors") {
    const auto kv = KeyValueConfig::parse_text("a = 1.5  # trailing comment\n"
                                               "# full-line comment\n"
                                               "list = 4, 6, 8, digital\n"
                                               "name = hello\n",
                                               "inline");
    CHECK(kv.get_double("a", 0.0) == 1.5);
    CHECK(kv.get_list("list") == std::vector<std::string>{"4", "6", "8", "digital"});
    CHECK(kv.get_string("name", "") == "hello");
    CHECK(kv.get_int("missing", 42) == 42);
    kv.reject_unknown_keys();

    CHECK_THROWS_AS(KeyValueConfig::parse_text("novalue\n", "inline"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse_text("a = 1\na = 2\n", "inline"), ConfigError);
    const auto bad = KeyValueConfig::parse_text("a = xyz\n", "inline");
    CHECK_THROWS_AS(bad.get_double("a", 0.0), ConfigError);

    const auto unused = KeyValueConfig::parse_text("mystery = 1\n", "inline");
    CHECK_THROWS_AS(unused.reject_unknown_keys(), ConfigError);
}

TEST_CASE("experiment config round-trips through the parser") {
    const auto kv = KeyValueConfig::parse_text("num_users = 4\n"
                                               "num_bs_antennas = 8\n"
                                               "modulation_order = 16\n"
                                               "snr_db = 10, 14\n"
                                               "precision = 4, inf, digital\n"
                                               "trials = 123\n"
                                               "seed = 9\n"
                                               "structure = direct\n"
                                               "g_min_uS = 0.2\n"
                                               "g_max_uS = 25\n"
                                               "v0 = 0.2\n",
                                               "inline");
    const ExperimentConfig cfg = experiment_from_config(kv);
    kv.reject_unknown_keys();
    CHECK(cfg.mimo.num_users == 4);
    CHECK(cfg.mimo.num_bs_antennas == 8);
    CHECK(cfg.snr_db == std::vector<double>{10.0, 14.0});
    REQUIRE(cfg.precisions.size() == 3);
    CHECK(cfg.precisions[0].label() == "4");
    CHECK(cfg.precisions[1].label() == "inf");
    CHECK(cfg.precisions[2].label() == "digital");
    CHECK(cfg.trials == 123);
    CHECK(cfg.seed == 9);
    CHECK(cfg.structure == SlicerStructure::direct_select);
    CHECK(cfg.range.g_min == doctest::Approx(0.2e-6).epsilon(1e-12));
    CHECK(cfg.range.g_max == doctest::Approx(25e-6).epsilon(1e-12));
    CHECK(cfg.reference_voltage == 0.2);
}

TEST_CASE("precision tokens parse strictly") {
    CHECK(parse_precision("digital").kind == PrecisionSetting::Kind::digital);
    CHECK(!parse_precision("inf").bits.has_value());
    CHECK(parse_precision("6").bits == 6);
    CHECK_THROWS_AS(parse_precision("six"), ConfigError);
    CHECK_THROWS_AS(parse_precision("0"), ConfigError);
}

TEST_CASE("sweep results are reproducible and respect BER bounds") {
    const ExperimentConfig cfg = tiny_experiment();
    std::ostringstream sink;
    const auto first = ber_sweep(cfg, sink);
    const auto second = ber_sweep(cfg, sink);

    REQUIRE(first.size() == 4); // 2 SNR x 2 precisions
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].bit_errors == second[i].bit_errors);
        CHECK(first[i].bits_sent == second[i].bits_sent);
        CHECK(first[i].bits_sent == cfg.trials * 2 * 2); // K * log2(order) per trial
        CHECK(first[i].ber >= 0.0);
        CHECK(first[i].ber <= 1.0);
    }
}

TEST_CASE("ideal analog precision reproduces the digital decisions") {
    const ExperimentConfig cfg = tiny_experiment();
    std::ostringstream sink;
    const auto records = ber_sweep(cfg, sink);
    // records come grouped per SNR: digital then inf
    for (std::size_t i = 0; i + 1 < records.size(); i += 2) {
        CHECK(records[i].precision == "digital");
        CHECK(records[i + 1].precision == "inf");
        CHECK(records[i].bit_errors == records[i + 1].bit_errors);
    }
}

TEST_CASE("thread count does not change the results") {
    ExperimentConfig cfg = tiny_experiment();
    cfg.trials = 64;
    std::ostringstream sink;
    const auto serial = ber_sweep(cfg, sink);
    cfg.threads = 4;
    const auto parallel = ber_sweep(cfg, sink);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(serial[i].bit_errors == parallel[i].bit_errors);
}

TEST_CASE("common random numbers hold across precision lists") {
    ExperimentConfig cfg = tiny_experiment();
    cfg.precisions = {PrecisionSetting::digital()};
    std::ostringstream sink;
    const auto digital_only = ber_sweep(cfg, sink);

    cfg.precisions = {PrecisionSetting::analog(4), PrecisionSetting::digital()};
    const auto mixed = ber_sweep(cfg, sink);

    REQUIRE(digital_only.size() == 2);
    REQUIRE(mixed.size() == 4);
    CHECK(digital_only[0].bit_errors == mixed[1].bit_errors);
    CHECK(digital_only[1].bit_errors == mixed[3].bit_errors);
}

TEST_CASE("early stop ends a point once every precision hit the target") {
    ExperimentConfig cfg = tiny_experiment();
    cfg.snr_db = {-20.0}; // errors on almost every bit
    cfg.precisions = {PrecisionSetting::digital()};
    cfg.trials = 100000;
    cfg.target_errors = 50;
    std::ostringstream sink;
    const auto records = ber_sweep(cfg, sink);
    REQUIRE(records.size() == 1);
    CHECK(records[0].bit_errors >= 50);
    CHECK(records[0].bits_sent < cfg.trials * 4); // stopped well before the budget
}

TEST_CASE("sweep CSV writes the v1 schema and round-trips") {
    const ExperimentConfig cfg = tiny_experiment();
    std::ostringstream sink;
    const auto records = ber_sweep(cfg, sink);

    const std::string path = "test_sweep_out.csv";
    write_ber_csv(path, records);
    const std::string text = slurp(path);
    CHECK(text.find("snr_db,precision,bits_sent,bit_errors,ber\n") == 0);

    const auto parsed = read_ber_csv(path);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].snr_db == records[i].snr_db);
        CHECK(parsed[i].precision == records[i].precision);
        CHECK(parsed[i].bits_sent == records[i].bits_sent);
        CHECK(parsed[i].bit_errors == records[i].bit_errors);
        CHECK(parsed[i].ber == records[i].ber);
    }
    std::remove(path.c_str());
}

TEST_CASE("plot emission writes one data row per record plus the SVG") {
    const ExperimentConfig cfg = tiny_experiment();
    std::ostringstream sink;
    const auto records = ber_sweep(cfg, sink);

    emit_plot_data(records, "test_plot_out");
    const std::string csv = slurp("test_plot_out.csv");
    CHECK(csv.find("snr_db,precision,ber\n") == 0);
    std::size_t rows = 0;
    for (char ch : csv)
        rows += ch == '\n';
    CHECK(rows == records.size() + 1);

    const std::string svg = slurp("test_plot_out.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::remove("test_plot_out.csv");
    std::remove("test_plot_out.svg");

    CHECK_THROWS_AS(emit_plot_data({}, "x"), std::invalid_argument);
}

TEST_CASE("demo walks four stages and recovers every symbol") {
    std::ostringstream os;
    run_demo(os);
    const std::string text = os.str();
    CHECK(text.find("stage 1 (8 outputs)") != std::string::npos);
    CHECK(text.find("stage 2 (6 outputs)") != std::string::npos);
    CHECK(text.find("stage 3 (4 outputs)") != std::string::npos);
    CHECK(text.find("stage 4 (2 outputs)") != std::string::npos);
    CHECK(text.find("all symbols recovered") != std::string::npos);
}

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

#include "memsic/perf.hpp"

#include "memsic/report.hpp"
#include "memsic/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace memsic;

namespace {

struct SolvedDetector {
    DetectorInstance det;
    std::vector<ModuleIO> io;
};

SolvedDetector solved_instance(Index users, Index antennas, std::uint64_t seed) {
    const Constellation constellation = build_constellation(16, 0.1);
    const MimoConfig cfg = MimoConfig::uniform(users, antennas, 16);
    Rng rng(seed);
    const ChannelRealization chan = generate_channel(cfg, rng);
    ComplexVector symbols(users);
    for (Index k = 0; k < users; ++k)
        symbols(k) = constellation.points(static_cast<Index>(rng.bits() % 16));
    const double noise_variance = 0.2;
    const ReceivedSignal rx = transmit(chan, symbols, noise_variance, rng);

    SolvedDetector out{build_detector(chan, noise_variance, constellation,
                                      default_conductance_range(), 6,
                                      SlicerStructure::indirect_select),
                       {}};
    out.io = detect(out.det, rx.y).stage_io;
    return out;
}

} // namespace

TEST_CASE("convergence time matches the closed form") {
    TimingParams params; // defaults: 130 / 8 / 14 / 0.4 / 10 ns
    CHECK(convergence_time(32, params) == doctest::Approx(4874.4e-9).epsilon(1e-12));
    CHECK(convergence_time(1, params) ==
          doctest::Approx((0.4 + 130.0 + 8.0 + 14.0 + 10.0) * 1e-9).epsilon(1e-12));

    // slower slicer parts: 10 ns comparator, 150 ns multiplexer
    TimingParams slow = params;
    slow.comparator_delay = 10e-9;
    slow.mux_delay = 150e-9;
    CHECK(convergence_time(4, slow) ==
          doctest::Approx((0.4 + 4.0 * 290.0 + 10.0) * 1e-9).epsilon(1e-12));
}

TEST_CASE("convergence time is affine in the stage count") {
    TimingParams params;
    const double slope = params.t2 + params.slicer_delay();
    for (Index k = 1; k < 40; k += 3)
        CHECK(convergence_time(k + 1, params) - convergence_time(k, params) ==
              doctest::Approx(slope).epsilon(1e-12));
}

TEST_CASE("speed and efficiency ratios invert the benchmark products") {
    const double tops = compute_tops(benchmark_flops_32x64, 4874.4e-9);
    CHECK(std::abs(tops - 5.5) / 5.5 < 0.01);

    const double tpw = compute_tops_per_watt(benchmark_flops_32x64, 18.98e-6);
    CHECK(std::abs(tpw - 1.41) / 1.41 < 0.01);

    CHECK(compute_tops(0.0, 1e-6) == 0.0);
    CHECK_THROWS_AS(compute_tops(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_tops_per_watt(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("component counts for the 32x64 16-QAM detector") {
    const ComponentCounts counts = component_counts(32, 64, 4);
    CHECK(counts.comparator == 192); // 2K slicers, W-1 comparators each
    CHECK(counts.mux == 64);
    CHECK(counts.adc == 64);
    CHECK(counts.dac == 128);
    // amplifier banks sum(2R + n) + inverters sum(2R + n + 2(k-1)) + 2K followers
    long long expected_oa = 0;
    for (long long k = 1; k <= 32; ++k) {
        const long long n = 2 * (32 - k + 1);
        expected_oa += 128 + n;
        expected_oa += 128 + n + 2 * (k - 1);
    }
    expected_oa += 64;
    CHECK(counts.oa == expected_oa);
}

TEST_CASE("energy is zero at zero time, linear in time, additive over parts") {
    const SolvedDetector solved = solved_instance(3, 6, 307);
    const EnergyParams params;

    const EnergyBreakdown zero = estimate_energy(solved.det, solved.io, 0.0, params);
    CHECK(zero.total() == 0.0);

    const double t = 3.3e-6;
    const EnergyBreakdown once = estimate_energy(solved.det, solved.io, t, params);
    const EnergyBreakdown twice = estimate_energy(solved.det, solved.io, 2.0 * t, params);
    CHECK(twice.total() == doctest::Approx(2.0 * once.total()).epsilon(1e-12));
    CHECK(twice.memristor == doctest::Approx(2.0 * once.memristor).epsilon(1e-12));

    CHECK(once.total() == doctest::Approx(once.memristor + once.oa + once.comparator +
                                          once.mux + once.adc + once.dac)
                              .epsilon(1e-15));
    CHECK(once.memristor > 0.0);
}

TEST_CASE("perf report keeps speed*time and efficiency*energy consistent") {
    const SolvedDetector solved = solved_instance(4, 8, 311);
    const PerfReport report =
        make_perf_report(solved.det, solved.io, TimingParams{}, EnergyParams{});
    CHECK(report.speed_tops * report.total_time * 1e12 ==
          doctest::Approx(report.flops).epsilon(1e-12));
    CHECK(report.efficiency_tops_per_watt * report.energy_joules * 1e12 ==
          doctest::Approx(report.flops).epsilon(1e-12));
    CHECK(!report.flops_reference.has_value()); // only the 32x64 scenario has one
    CHECK(report.flops == report.flops_convention);
}

TEST_CASE("comparison table carries the fixed reference figures") {
    const SolvedDetector solved = solved_instance(3, 6, 313);
    const PerfReport report =
        make_perf_report(solved.det, solved.io, TimingParams{}, EnergyParams{});
    const std::string table = comparison_table({&report, 1});

    // nine reference constants
    for (const char* token : {"0.128", "2100", "0.0128", "3.12", "343.1", "0.078", "6.7",
                              "199.7", "0.134"})
        CHECK(table.find(token) != std::string::npos);
    CHECK(table.find("TMS320C6678") != std::string::npos);
    CHECK(table.find("Virtex-7 690T") != std::string::npos);
    CHECK(table.find("RTX A1000") != std::string::npos);
    CHECK(table.find("proposed circuit") != std::string::npos);
}

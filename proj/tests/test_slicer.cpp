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

#include "memsic/slicer.hpp"

#include "memsic/constellation.hpp"
#include "memsic/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace memsic;

namespace {

Index brute_force_nearest(double x, const RealVector& levels) {
    Index best = 0;
    double best_dist = std::abs(x - levels(0));
    for (Index i = 1; i < levels.size(); ++i) {
        const double dist = std::abs(x - levels(i));
        if (dist < best_dist) {
            best = i;
            best_dist = dist;
        }
    }
    return best;
}

} // namespace

TEST_CASE("16-QAM thresholds sit midway between the levels") {
    const Constellation c = build_constellation(16, 0.1);
    const RealVector z = make_thresholds(c.s_value);
    const double unit = 0.1 / std::sqrt(10.0);
    REQUIRE(z.size() == 3);
    CHECK(z(0) == doctest::Approx(-2.0 * unit).epsilon(1e-14));
    CHECK(z(1) == 0.0);
    CHECK(z(2) == doctest::Approx(2.0 * unit).epsilon(1e-14));
    // symmetric level sets give thresholds symmetric about zero
    CHECK(z(0) == -z(2));
}

TEST_CASE("two-level thresholds reduce to the mean") {
    RealVector levels(2);
    levels << -0.4, 1.0;
    const RealVector z = make_thresholds(levels);
    REQUIRE(z.size() == 1);
    CHECK(z(0) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("non-monotone level sets are rejected") {
    RealVector levels(3);
    levels << 0.0, 1.0, 1.0;
    CHECK_THROWS_AS(make_thresholds(levels), ConfigError);
}

TEST_CASE("comparator bank produces strict thermometer codes") {
    const Constellation c = build_constellation(16, 0.1);
    const RealVector z = make_thresholds(c.s_value);

    CHECK(comparator_bank(z(0) - 0.01, z).bits == std::vector<int>{0, 0, 0});
    CHECK(comparator_bank(z(2) + 0.01, z).bits == std::vector<int>{1, 1, 1});
    // exact threshold input stays in the lower cell (strict greater-than)
    CHECK(comparator_bank(z(1), z).bits == std::vector<int>{1, 0, 0});

    Rng rng(113);
    for (int rep = 0; rep < 1000; ++rep) {
        const ComparatorWord p = comparator_bank((rng.uniform() - 0.5) * 0.5, z);
        CHECK(p.is_thermometer());
    }
}

TEST_CASE("direct select addresses channels 1, 2, 4 and 8") {
    CHECK(direct_select_index({{0, 0, 0}}) == 0);
    CHECK(direct_select_index({{1, 0, 0}}) == 1);
    CHECK(direct_select_index({{1, 1, 0}}) == 3);
    CHECK(direct_select_index({{1, 1, 1}}) == 7);
    CHECK_THROWS_AS(direct_select_index({{0, 1, 0}}), InvalidSelectError);
}

TEST_CASE("four-level compression follows the two-gate network") {
    CHECK(logic_compress({{0, 0, 0}}).bits == std::vector<int>{0, 0});
    CHECK(logic_compress({{1, 0, 0}}).bits == std::vector<int>{0, 1});
    CHECK(logic_compress({{1, 1, 0}}).bits == std::vector<int>{1, 1});
    CHECK(logic_compress({{1, 1, 1}}).bits == std::vector<int>{1, 0});
    CHECK_THROWS_AS(logic_compress({{1, 0, 1}}), InvalidSelectError);
}

TEST_CASE("indirect select addresses channels 1, 3, 4 and 2") {
    CHECK(indirect_select_index({{0, 0}}) == 0);
    CHECK(indirect_select_index({{0, 1}}) == 2);
    CHECK(indirect_select_index({{1, 1}}) == 3);
    CHECK(indirect_select_index({{1, 0}}) == 1);
}

TEST_CASE("slicer reproduces the four-level lookup for both structures") {
    const Constellation c = build_constellation(16, 0.1);
    for (SlicerStructure structure :
         {SlicerStructure::direct_select, SlicerStructure::indirect_select}) {
        const SlicerConfig cfg = make_slicer(c, structure);
        const RealVector& z = cfg.thresholds;
        // one probe per cell of the threshold partition
        CHECK(slicer_eval(z(0) - 0.02, cfg) == c.s_value(0));
        CHECK(slicer_eval((z(0) + z(1)) / 2, cfg) == c.s_value(1));
        CHECK(slicer_eval((z(1) + z(2)) / 2, cfg) == c.s_value(2));
        CHECK(slicer_eval(z(2) + 0.02, cfg) == c.s_value(3));
        // levels are fixed points
        for (Index w = 0; w < c.s_value.size(); ++w)
            CHECK(slicer_eval(c.s_value(w), cfg) == c.s_value(w));
    }
}

TEST_CASE("both structures match brute force on random inputs") {
    for (int order : {16, 64}) { // W = 4 and W = 8
        const Constellation c = build_constellation(order, 0.1);
        const SlicerConfig direct = make_slicer(c, SlicerStructure::direct_select);
        const SlicerConfig indirect = make_slicer(c, SlicerStructure::indirect_select);

        Rng rng(127);
        const double span = 2.5 * c.s_value(c.s_value.size() - 1);
        for (int rep = 0; rep < 20000; ++rep) {
            const double v = (rng.uniform() - 0.5) * 2.0 * span;
            const double direct_out = slicer_eval(v, direct);
            const double indirect_out = slicer_eval(v, indirect);
            CHECK(direct_out == indirect_out);
            CHECK(direct_out == c.s_value(brute_force_nearest(v, c.s_value)));
        }
    }
}

TEST_CASE("slicing is idempotent") {
    const Constellation c = build_constellation(64, 0.1);
    const SlicerConfig cfg = make_slicer(c, SlicerStructure::indirect_select);
    Rng rng(131);
    for (int rep = 0; rep < 1000; ++rep) {
        const double v = (rng.uniform() - 0.5) * 0.5;
        CHECK(slicer_eval(slicer_eval(v, cfg), cfg) == slicer_eval(v, cfg));
    }
}

TEST_CASE("channel economy: direct needs 2^(W-1) channels, indirect W") {
    const Constellation qam16 = build_constellation(16, 0.1);
    const SlicerConfig direct4 = make_slicer(qam16, SlicerStructure::direct_select);
    const SlicerConfig indirect4 = make_slicer(qam16, SlicerStructure::indirect_select);
    CHECK(direct4.mux_channel_count() == 8);
    CHECK(indirect4.mux_channel_count() == 4);

    const Constellation qam64 = build_constellation(64, 0.1);
    const SlicerConfig direct8 = make_slicer(qam64, SlicerStructure::direct_select);
    const SlicerConfig indirect8 = make_slicer(qam64, SlicerStructure::indirect_select);
    CHECK(direct8.mux_channel_count() == 128);
    CHECK(indirect8.mux_channel_count() == 8);
}

TEST_CASE("truth table lists one row per threshold cell") {
    const Constellation c = build_constellation(16, 0.1);
    const auto rows = truth_table(make_slicer(c, SlicerStructure::indirect_select));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].interval == "< z1");
    CHECK(rows[1].interval == "z1 ~ z2");
    CHECK(rows[2].interval == "z2 ~ z3");
    CHECK(rows[3].interval == "> z3");
    CHECK(rows[0].p.bits == std::vector<int>{0, 0, 0});
    CHECK(rows[1].p.bits == std::vector<int>{1, 0, 0});
    CHECK(rows[2].p.bits == std::vector<int>{1, 1, 0});
    CHECK(rows[3].p.bits == std::vector<int>{1, 1, 1});
    REQUIRE(rows[0].q.has_value());
    CHECK(rows[0].q->bits == std::vector<int>{0, 0});
    CHECK(rows[1].q->bits == std::vector<int>{0, 1});
    CHECK(rows[2].q->bits == std::vector<int>{1, 1});
    CHECK(rows[3].q->bits == std::vector<int>{1, 0});
    for (std::size_t w = 0; w < rows.size(); ++w)
        CHECK(rows[w].output == c.s_value(static_cast<Index>(w)));

    // direct structure rows carry no compressed word
    const auto direct_rows = truth_table(make_slicer(c, SlicerStructure::direct_select));
    CHECK(!direct_rows[0].q.has_value());

    // W = 2 and W = 8 partitions
    CHECK(truth_table(make_slicer(build_constellation(4, 1.0),
                                  SlicerStructure::indirect_select)).size() == 2);
    const auto rows8 = truth_table(make_slicer(build_constellation(64, 0.1),
                                               SlicerStructure::indirect_select));
    REQUIRE(rows8.size() == 8);
    for (int w = 0; w < 8; ++w)
        CHECK(rows8[static_cast<std::size_t>(w)].p.weight() == w);
}

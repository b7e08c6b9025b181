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

#include "memsic/channel.hpp"

#include "memsic/constellation.hpp"

#include <doctest.h>

using namespace memsic;

TEST_CASE("channel generation is seed-deterministic") {
    const MimoConfig cfg = MimoConfig::uniform(2, 4, 16);
    const ChannelRealization a = generate_channel(cfg, 7);
    const ChannelRealization b = generate_channel(cfg, 7);
    CHECK(a.H == b.H);
    CHECK(a.F == b.F);
    const ChannelRealization c = generate_channel(cfg, 8);
    CHECK(a.H != c.H);
}

TEST_CASE("unit transmit powers leave the channel unscaled") {
    const MimoConfig cfg = MimoConfig::uniform(3, 6, 4);
    const ChannelRealization chan = generate_channel(cfg, 11);
    CHECK(chan.F == chan.H);
}

TEST_CASE("per-user powers scale individual columns") {
    MimoConfig cfg = MimoConfig::uniform(2, 4, 4);
    cfg.tx_powers << 4.0, 9.0;
    const ChannelRealization chan = generate_channel(cfg, 3);
    CHECK((chan.F.col(0) - 2.0 * chan.H.col(0)).norm() == 0.0);
    CHECK((chan.F.col(1) - 3.0 * chan.H.col(1)).norm() == 0.0);
}

TEST_CASE("entry magnitudes average to unit variance over a large draw") {
    const MimoConfig cfg = MimoConfig::uniform(32, 64, 16);
    const ChannelRealization chan = generate_channel(cfg, 21);
    const double mean_sq = chan.H.cwiseAbs2().mean();
    CHECK(mean_sq > 0.9);
    CHECK(mean_sq < 1.1);
}

TEST_CASE("noise-free transmit reproduces F*s exactly") {
    const MimoConfig cfg = MimoConfig::uniform(2, 4, 16);
    const ChannelRealization chan = generate_channel(cfg, 5);
    const Constellation c = build_constellation(16, 0.1);
    ComplexVector s(2);
    s << c.points(3), c.points(9);
    const ReceivedSignal rx = transmit(chan, s, 0.0, 13);
    CHECK(rx.y == (chan.F * s).eval());
    CHECK(rx.noise.isZero(0.0));
}

TEST_CASE("identity channel passes symbols through") {
    ChannelRealization chan;
    chan.H = ComplexMatrix::Identity(3, 3);
    chan.F = chan.H;
    ComplexVector s(3);
    s << Complex(1, 2), Complex(-3, 0.5), Complex(0, -1);
    const ReceivedSignal rx = transmit(chan, s, 0.0, 1);
    CHECK(rx.y == s);
}

TEST_CASE("empirical noise variance matches the configured variance") {
    ChannelRealization chan;
    chan.H = ComplexMatrix::Zero(2, 1);
    chan.F = chan.H;
    const ComplexVector s = ComplexVector::Zero(1);
    const double target = 0.37;

    Rng rng(99);
    double sum_sq = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const ReceivedSignal rx = transmit(chan, s, target, rng);
        sum_sq += rx.noise.squaredNorm();
    }
    const double empirical = sum_sq / (2.0 * draws); // per-entry complex variance
    CHECK(empirical == doctest::Approx(target).epsilon(0.02));
}

TEST_CASE("transmit validates dimensions") {
    const MimoConfig cfg = MimoConfig::uniform(2, 4, 16);
    const ChannelRealization chan = generate_channel(cfg, 5);
    CHECK_THROWS_AS(transmit(chan, ComplexVector::Zero(3), 0.1, 1), std::invalid_argument);
}

TEST_CASE("config invariants are enforced") {
    CHECK_THROWS_AS(MimoConfig::uniform(4, 4, 16), ConfigError);  // needs R > K
    CHECK_THROWS_AS(MimoConfig::uniform(0, 4, 16), ConfigError);
    CHECK_THROWS_AS(MimoConfig::uniform(2, 4, 8), ConfigError);
    MimoConfig bad = MimoConfig::uniform(2, 4, 16);
    bad.tx_powers(1) = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

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

#ifndef MEMSIC_CHANNEL_HPP
#define MEMSIC_CHANNEL_HPP

#include "memsic/errors.hpp"
#include "memsic/rng.hpp"
#include "memsic/types.hpp"

#include <cmath>
#include <string>

namespace memsic {

// Uplink dimensions and powers: R base-station antennas serve K
// single-antenna users, user k transmitting with linear power tx_powers(k).
struct MimoConfig {
    Index num_users = 0;       // K
    Index num_bs_antennas = 0; // R
    RealVector tx_powers;      // K entries, linear units
    double noise_variance = 0.0; // per-entry complex noise variance
    int modulation_order = 16;

    void validate() const {
        if (num_users < 1)
            throw ConfigError("num_users must be >= 1");
        if (num_bs_antennas <= num_users)
            throw ConfigError("num_bs_antennas must exceed num_users");
        if (tx_powers.size() != num_users)
            throw ConfigError("tx_powers must have one entry per user");
        if ((tx_powers.array() <= 0.0).any())
            throw ConfigError("tx_powers must be positive");
        if (noise_variance < 0.0)
            throw ConfigError("noise_variance must be nonnegative");
        if (modulation_order != 4 && modulation_order != 16 && modulation_order != 64)
            throw ConfigError("modulation_order must be 4, 16 or 64");
    }

    static MimoConfig uniform(Index users, Index antennas, int order, double noise_variance = 0.0) {
        MimoConfig cfg;
        cfg.num_users = users;
        cfg.num_bs_antennas = antennas;
        cfg.tx_powers = RealVector::Ones(users);
        cfg.noise_variance = noise_variance;
        cfg.modulation_order = order;
        cfg.validate();
        return cfg;
    }
};

// One fading realization. H carries the raw i.i.d. CN(0,1) gains; F folds
// the per-user amplitudes in: column k of F is sqrt(tx_powers(k)) times
// column k of H.
struct ChannelRealization {
    ComplexMatrix H; // R x K
    ComplexMatrix F; // R x K
};

struct ReceivedSignal {
    ComplexVector y;            // length R
    ComplexVector true_symbols; // length K
    ComplexVector noise;        // length R
};

inline ChannelRealization generate_channel(const MimoConfig& cfg, Rng& rng) {
    cfg.validate();
    ChannelRealization chan;
    chan.H.resize(cfg.num_bs_antennas, cfg.num_users);
    for (Index j = 0; j < cfg.num_users; ++j)
        for (Index i = 0; i < cfg.num_bs_antennas; ++i)
            chan.H(i, j) = rng.complex_normal();
    chan.F = chan.H * cfg.tx_powers.cwiseSqrt().asDiagonal();
    return chan;
}

inline ChannelRealization generate_channel(const MimoConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    return generate_channel(cfg, rng);
}

inline ReceivedSignal transmit(const ChannelRealization& chan, const ComplexVector& symbols,
                               double noise_variance, Rng& rng) {
    if (symbols.size() != chan.F.cols())
        throw std::invalid_argument("transmit: symbol vector does not match channel columns");
    if (noise_variance < 0.0)
        throw std::invalid_argument("transmit: noise variance must be nonnegative");

    ReceivedSignal rx;
    rx.true_symbols = symbols;
    rx.noise.resize(chan.F.rows());
    const double amplitude = std::sqrt(noise_variance);
    for (Index i = 0; i < rx.noise.size(); ++i)
        rx.noise(i) = amplitude * rng.complex_normal();
    rx.y = chan.F * symbols + rx.noise;
    return rx;
}

inline ReceivedSignal transmit(const ChannelRealization& chan, const ComplexVector& symbols,
                               double noise_variance, std::uint64_t seed) {
    Rng rng(seed);
    return transmit(chan, symbols, noise_variance, rng);
}

} // namespace memsic

#endif // MEMSIC_CHANNEL_HPP

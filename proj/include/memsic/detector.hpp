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
// Full detector: K matrix-computing modules in cascade, two slicers per
// stage. Stage k solves for the remaining K-k+1 symbols given the shared
// received vector and the k-1 already-decided symbols; the first and
// (K+2-k)-th output voltages are sliced into the real and imaginary parts
// of the stage decision. The behavioral model evaluates stages strictly
// sequentially; the steady state is identical to the physical circuit and
// timing is handled separately by the performance model.

#ifndef MEMSIC_DETECTOR_HPP
#define MEMSIC_DETECTOR_HPP

#include "memsic/channel.hpp"
#include "memsic/constellation.hpp"
#include "memsic/crossbar.hpp"
#include "memsic/realify.hpp"
#include "memsic/sic.hpp"
#include "memsic/slicer.hpp"
#include "memsic/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace memsic {

struct DetectorInstance {
    Constellation constellation;
    DetectionOrder order;
    ComplexMatrix ordered_matrix;        // channel columns in detection order
    std::vector<CrossbarProgram> stages; // K programs
    SlicerConfig slicer;                 // all 2K slicer instances are identical
    double noise_variance = 0.0;
    double input_scale = 0.0;            // c, volts per symbol unit
    double voltage_ceiling = default_voltage_ceiling;

    Index num_stages() const { return static_cast<Index>(stages.size()); }
    Index num_antennas() const { return ordered_matrix.rows(); }
};

/// Orders the channel columns, programs all K stage modules at the given
/// memristor bit depth, and instantiates the slicers. Deterministic: the
/// same inputs produce bit-identical programs. input_scale <= 0 selects
/// the default, the constellation reference voltage (so module outputs
/// land on the slicer level grid).
inline DetectorInstance build_detector(const ChannelRealization& chan, double noise_variance,
                                       const Constellation& constellation,
                                       const ConductanceRange& range, std::optional<int> bits,
                                       SlicerStructure structure, double input_scale = 0.0,
                                       double voltage_ceiling = default_voltage_ceiling) {
    DetectorInstance det;
    det.constellation = constellation;
    det.noise_variance = noise_variance;
    det.input_scale = input_scale > 0.0 ? input_scale : constellation.reference_voltage;
    det.voltage_ceiling = voltage_ceiling;

    det.order = order_columns(chan.F);
    const Index num_users = chan.F.cols();
    det.ordered_matrix.resize(chan.F.rows(), num_users);
    for (Index k = 0; k < num_users; ++k)
        det.ordered_matrix.col(k) = chan.F.col(det.order.sequence[k]);

    det.stages.reserve(static_cast<std::size_t>(num_users));
    for (Index k = 1; k <= num_users; ++k) {
        const RealMatrix tail =
            realify_matrix(det.ordered_matrix.rightCols(num_users - k + 1));
        std::optional<RealMatrix> head;
        if (k > 1)
            head = realify_matrix(det.ordered_matrix.leftCols(k - 1));
        det.stages.push_back(
            program_stage(k, tail, head, noise_variance, range, bits, det.input_scale));
    }

    det.slicer = make_slicer(constellation.axis_levels * det.input_scale, structure,
                             det.input_scale);
    return det;
}

struct DetectResult {
    ComplexVector symbols;           // user order, normalized alphabet
    SicTrace trace;                  // decoded stage solutions and decisions
    std::vector<ModuleIO> stage_io;  // solved module voltages per stage
    int voltage_warnings = 0;        // encoded inputs above the ceiling
};

/// Runs the detector on one received vector: per stage, encode the shared
/// received vector and the decided symbols, solve the module, slice the
/// two leading outputs, and carry the decision forward. Symbol estimates
/// are returned in user order.
inline DetectResult detect(const DetectorInstance& det, const ComplexVector& y) {
    if (y.size() != det.num_antennas())
        throw std::invalid_argument("detect: received vector length mismatch");

    const Index num_users = det.num_stages();
    const RealVector y_real = realify_vector(y);

    DetectResult result;
    result.trace.order = det.order;
    result.trace.ordered_matrix = det.ordered_matrix;
    result.stage_io.reserve(static_cast<std::size_t>(num_users));

    ComplexVector head_estimates(0);
    for (Index k = 1; k <= num_users; ++k) {
        const CrossbarProgram& prog = det.stages[static_cast<std::size_t>(k - 1)];
        const EncodedInputs enc =
            encode_inputs(y_real, realify_vector(head_estimates), prog, det.voltage_ceiling);
        if (enc.over_ceiling)
            ++result.voltage_warnings;

        ModuleIO io = solve_module(prog, enc.v_in1, enc.v_in2);
        RealVector decoded = decode_output(io.v_out, det.input_scale);

        // slicers consume the raw output voltages
        const Index im_pos = num_users + 1 - k;
        const Index re_level = slicer_select(io.v_out(0), det.slicer);
        const Index im_level = slicer_select(io.v_out(im_pos), det.slicer);
        const Complex estimate(det.constellation.axis_levels(re_level),
                               det.constellation.axis_levels(im_level));

        result.trace.slicer_inputs.push_back({decoded(0), decoded(im_pos)});
        result.trace.stage_results.push_back(std::move(decoded));
        result.trace.stage_estimates.push_back(estimate);
        result.stage_io.push_back(std::move(io));

        head_estimates.conservativeResize(k);
        head_estimates(k - 1) = estimate;
    }

    result.symbols.resize(num_users);
    for (Index k = 0; k < num_users; ++k)
        result.symbols(det.order.sequence[k]) = result.trace.stage_estimates[k];
    return result;
}

} // namespace memsic

#endif // MEMSIC_DETECTOR_HPP

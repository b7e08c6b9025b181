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
// Steady-state model of one matrix-computing module. The module is a pair
// of operational-amplifier banks coupled through memristor crossbar
// arrays; with ideal virtual grounds the node equations are
//
//   g_input * v_in1 - D1 * v_in2 + D2 * v2 + g_fb1 * v1 = 0        (bank 1)
//   D3' * v1 - g_fb2 * v2 = 0                                      (bank 2)
//
// where D1, D2, D3 are the effective (difference-pair) conductance
// matrices. Eliminating v1 gives the closed form solved here:
//
//   v_out = -v2 = (D3' D2 + g_fb1 g_fb2 I)^-1 D3' (g_input v_in1 - D1 v_in2)
//
// Programming the stage tail onto D2/D3 and the stage head onto D1 makes
// v_out a scaled copy of the regularized least-squares stage solution.

#ifndef MEMSIC_CROSSBAR_HPP
#define MEMSIC_CROSSBAR_HPP

#include "memsic/conductance.hpp"
#include "memsic/errors.hpp"
#include "memsic/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>

namespace memsic {

inline constexpr double default_voltage_ceiling = 1.0; // volts

// Programmed state of one stage module. tail_a and tail_b hold the same
// logical matrix on physically distinct arrays (the feedforward and
// feedback couplings of the two amplifier banks); head is absent in the
// first stage, which has no cancellation input.
struct CrossbarProgram {
    std::optional<MappedMatrix> head; // D1 pair, maps the decided columns
    MappedMatrix tail_a;              // D2 pair, maps the remaining columns
    MappedMatrix tail_b;              // D3 pair, same source as tail_a
    double g_input = 0.0;             // conductance on every v_in1 node
    double g_fb1 = 0.0;               // bank-1 feedback conductance
    double g_fb2 = 0.0;               // bank-2 feedback conductance
    double input_scale = 0.0;         // volts per unit of the solved quantity
    ConductanceRange range;
    std::optional<int> bits;

    Index in_dim() const { return tail_a.rows(); }   // 2R
    Index out_dim() const { return tail_a.cols(); }  // 2(K-k+1)
    Index head_dim() const { return head ? head->cols() : 0; } // 2(k-1)
};

// Voltages of one solved operating point.
struct ModuleIO {
    RealVector v_in1;
    RealVector v_in2;
    RealVector v1;    // bank-1 amplifier outputs
    RealVector v2;    // bank-2 amplifier outputs, v_out = -v2
    RealVector v_out;
};

struct EncodedInputs {
    RealVector v_in1;
    RealVector v_in2;
    bool over_ceiling = false;
};

/// Programs one stage: maps the realified tail matrix onto the two coupled
/// arrays (shared scale), the realified head matrix onto the cancellation
/// array (own scale), and factors scale^2 * noise_variance onto the two
/// feedback conductances. All conductances are then rounded to the device
/// bit depth. noise_variance = 0 removes the feedback devices entirely
/// (g_fb1 = g_fb2 = 0), mirroring the removal of the cancellation arrays
/// in the first stage.
///
/// When the full-swing tail scale would push the feedback product above
/// g_max^2 (weak tail columns under strong noise), the tail mapping scale
/// is reduced until the symmetric factorization lands exactly on g_max.
/// The module then computes the same stage solution with less conductance
/// swing. A product below g_min^2 has no such remedy (raising the scale
/// would overflow the arrays) and raises a calibration error.
inline CrossbarProgram program_stage(Index stage, const RealMatrix& tail,
                                     const std::optional<RealMatrix>& head,
                                     double noise_variance, const ConductanceRange& range,
                                     std::optional<int> bits, double input_scale) {
    if (stage < 1)
        throw std::invalid_argument("program_stage: stage index is 1-based");
    if ((stage == 1) != !head)
        throw std::invalid_argument("program_stage: head matrix must be absent exactly at stage 1");
    if (head && head->rows() != tail.rows())
        throw std::invalid_argument("program_stage: head and tail row counts differ");
    if (noise_variance < 0.0)
        throw std::invalid_argument("program_stage: noise variance must be nonnegative");
    if (!(input_scale > 0.0))
        throw std::invalid_argument("program_stage: input scale must be positive");

    CrossbarProgram prog;
    prog.range = range;
    prog.bits = bits;
    prog.input_scale = input_scale;

    MappedMatrix tail_map = map_matrix(tail, range);
    if (noise_variance > 0.0 && tail_map.scale * std::sqrt(noise_variance) > range.g_max)
        tail_map = map_matrix(tail, range, range.g_max / std::sqrt(noise_variance));

    prog.tail_a = quantize_conductance(tail_map, bits, range);
    prog.tail_b = quantize_conductance(tail_map, bits, range);
    if (head)
        prog.head = quantize_conductance(map_matrix(*head, range), bits, range);

    if (noise_variance == 0.0) {
        prog.g_fb1 = 0.0;
        prog.g_fb2 = 0.0;
    } else {
        const double product = tail_map.scale * tail_map.scale * noise_variance;
        const double symmetric = tail_map.scale * std::sqrt(noise_variance);
        const double slack = 1.0 + 1e-12; // rounding headroom at the range edges
        double fb1 = symmetric;
        double fb2 = symmetric;
        if (symmetric < range.g_min) {
            fb1 = range.g_min;
            fb2 = product / fb1;
            if (fb2 * slack < range.g_min)
                throw CalibrationError(
                    "program_stage: required feedback product " + std::to_string(product) +
                    " S^2 falls below g_min^2 = " + std::to_string(range.g_min * range.g_min));
        } else if (symmetric > range.g_max) {
            fb1 = range.g_max;
            fb2 = product / fb1;
            if (fb2 > range.g_max * slack)
                throw CalibrationError(
                    "program_stage: required feedback product " + std::to_string(product) +
                    " S^2 exceeds g_max^2 = " + std::to_string(range.g_max * range.g_max));
        }
        fb1 = std::clamp(fb1, range.g_min, range.g_max);
        fb2 = std::clamp(fb2, range.g_min, range.g_max);
        prog.g_fb1 = quantize_conductance(fb1, bits, range);
        prog.g_fb2 = quantize_conductance(fb2, bits, range);
    }

    prog.g_input = quantize_conductance(range.midpoint(), bits, range);
    return prog;
}

/// Encodes the realified received vector and decided-symbol vector into
/// module input voltages. The scales invert the programmed conductances so
/// that the module output equals input_scale times the stage solution when
/// programming is ideal.
inline EncodedInputs encode_inputs(const RealVector& y_real, const RealVector& head_estimates,
                                   const CrossbarProgram& prog,
                                   double voltage_ceiling = default_voltage_ceiling) {
    if (y_real.size() != prog.in_dim())
        throw std::invalid_argument("encode_inputs: received vector length mismatch");
    if (head_estimates.size() != prog.head_dim())
        throw std::invalid_argument("encode_inputs: estimate vector length mismatch");

    EncodedInputs enc;
    enc.v_in1 = (prog.tail_a.scale * prog.input_scale / prog.g_input) * y_real;
    if (prog.head)
        enc.v_in2 = (prog.tail_a.scale * prog.input_scale / prog.head->scale) * head_estimates;
    else
        enc.v_in2.resize(0);

    double peak = enc.v_in1.cwiseAbs().maxCoeff();
    if (enc.v_in2.size() > 0)
        peak = std::max(peak, enc.v_in2.cwiseAbs().maxCoeff());
    enc.over_ceiling = voltage_ceiling > 0.0 && peak > voltage_ceiling;
    return enc;
}

/// Solves the steady-state node equations for the programmed module and
/// returns all node voltages. Purely algebraic; settling dynamics live in
/// the performance model.
inline ModuleIO solve_module(const CrossbarProgram& prog, const RealVector& v_in1,
                             const RealVector& v_in2) {
    if (v_in1.size() != prog.in_dim())
        throw std::invalid_argument("solve_module: v_in1 length mismatch");
    if (v_in2.size() != prog.head_dim())
        throw std::invalid_argument("solve_module: v_in2 length mismatch");

    const RealMatrix d2 = prog.tail_a.difference();
    const RealMatrix d3 = prog.tail_b.difference();

    RealVector drive = prog.g_input * v_in1;
    if (prog.head)
        drive -= prog.head->difference() * v_in2;

    RealMatrix system = d3.transpose() * d2;
    system.diagonal().array() += prog.g_fb1 * prog.g_fb2;

    Eigen::FullPivLU<RealMatrix> lu(system);
    if (!lu.isInvertible())
        throw SingularSystemError("solve_module: system matrix is singular "
                                  "(rank-deficient arrays with zero feedback product)");

    ModuleIO io;
    io.v_in1 = v_in1;
    io.v_in2 = v_in2;
    io.v_out = lu.solve(d3.transpose() * drive);
    io.v2 = -io.v_out;
    if (prog.g_fb1 > 0.0)
        io.v1 = (-drive - d2 * io.v2) / prog.g_fb1;
    else
        io.v1 = RealVector::Zero(prog.in_dim());
    return io;
}

/// Undoes the voltage scale; used for oracle comparison and reporting.
/// The slicers consume raw module output voltages.
inline RealVector decode_output(const RealVector& v_out, double input_scale) {
    if (!(input_scale > 0.0))
        throw std::invalid_argument("decode_output: input scale must be positive");
    return v_out / input_scale;
}

namespace detail {

inline void dump_matrix(std::ostream& os, const char* name, const RealMatrix& m) {
    os << name << " " << m.rows() << " " << m.cols() << "\n";
    const Eigen::IOFormat fmt(12, Eigen::DontAlignCols, " ", "\n", "", "", "", "");
    os << m.format(fmt) << "\n";
}

} // namespace detail

/// Structured text dump of a program (conductances in siemens, 12
/// significant digits) for inspection and golden-file comparisons.
inline void dump_program(const CrossbarProgram& prog, std::ostream& os) {
    const auto prev = os.precision(12);
    os << "crossbar-program v1\n";
    os << "dims in=" << prog.in_dim() << " out=" << prog.out_dim()
       << " head=" << prog.head_dim() << "\n";
    os << "bits=";
    if (prog.bits)
        os << *prog.bits;
    else
        os << "inf";
    os << " range=" << prog.range.g_min << " " << prog.range.g_max
       << " input_scale=" << prog.input_scale << "\n";
    os << "g_input=" << prog.g_input << " g_fb1=" << prog.g_fb1 << " g_fb2=" << prog.g_fb2
       << "\n";
    os << "tail_scale=" << prog.tail_a.scale << " head_scale=";
    if (prog.head)
        os << prog.head->scale;
    else
        os << "-";
    os << "\n";
    detail::dump_matrix(os, "tail_a.g_plus", prog.tail_a.g_plus);
    detail::dump_matrix(os, "tail_a.g_minus", prog.tail_a.g_minus);
    detail::dump_matrix(os, "tail_b.g_plus", prog.tail_b.g_plus);
    detail::dump_matrix(os, "tail_b.g_minus", prog.tail_b.g_minus);
    if (prog.head) {
        detail::dump_matrix(os, "head.g_plus", prog.head->g_plus);
        detail::dump_matrix(os, "head.g_minus", prog.head->g_minus);
    }
    os.precision(prev);
}

} // namespace memsic

#endif // MEMSIC_CROSSBAR_HPP

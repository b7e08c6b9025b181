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

#ifndef MEMSIC_SIC_HPP
#define MEMSIC_SIC_HPP

#include "memsic/channel.hpp"
#include "memsic/constellation.hpp"
#include "memsic/errors.hpp"
#include "memsic/realify.hpp"
#include "memsic/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace memsic {

// Detection sequence: position k holds the original column index detected
// at stage k+1 (0-based).
struct DetectionOrder {
    std::vector<Index> sequence;

    bool is_permutation() const {
        std::vector<bool> seen(sequence.size(), false);
        for (Index idx : sequence) {
            if (idx < 0 || idx >= static_cast<Index>(sequence.size()) || seen[idx])
                return false;
            seen[idx] = true;
        }
        return true;
    }
};

// Per-stage record of a successive-cancellation run. stage_results holds
// the real-valued stage solutions; head/tail views reconstruct the column
// partitions of the reordered transfer matrix.
struct SicTrace {
    DetectionOrder order;
    ComplexMatrix ordered_matrix;                    // columns of F in detection order
    std::vector<RealVector> stage_results;           // r_k, length 2(K-k+1)
    std::vector<std::array<double, 2>> slicer_inputs; // the two values quantized per stage
    std::vector<Complex> stage_estimates;            // e_{m_k}, detection order

    Index num_stages() const { return static_cast<Index>(stage_results.size()); }

    // first k columns (1-based k), empty for k = 0
    auto head_matrix(Index k) const { return ordered_matrix.leftCols(k); }
    // columns k..K (1-based k)
    auto tail_matrix(Index k) const {
        return ordered_matrix.rightCols(ordered_matrix.cols() - k + 1);
    }
    // complex stage solution assembled from the stacked real layout
    ComplexVector stage_complex(Index k) const { return complexify_vector(stage_results.at(k)); }
};

/// Columns sorted by Euclidean norm, strongest first; equal norms keep the
/// lower original index first.
inline DetectionOrder order_columns(const ComplexMatrix& f) {
    DetectionOrder order;
    order.sequence.resize(f.cols());
    RealVector norms(f.cols());
    for (Index j = 0; j < f.cols(); ++j) {
        norms(j) = f.col(j).norm();
        if (norms(j) == 0.0)
            throw DegenerateInputError("order_columns: column " + std::to_string(j) +
                                       " of the transfer matrix is zero");
        order.sequence[j] = j;
    }
    std::stable_sort(order.sequence.begin(), order.sequence.end(),
                     [&norms](Index a, Index b) { return norms(a) > norms(b); });
    return order;
}

/// One regularized least-squares stage on the realified system: solves
/// (Gt' Gt + noise_variance I) r = Gt' yt for the stacked real residual.
inline RealVector mmse_stage(const ComplexMatrix& g_tail, const ComplexVector& residual,
                             double noise_variance) {
    if (g_tail.rows() != residual.size())
        throw std::invalid_argument("mmse_stage: residual length does not match matrix rows");
    if (noise_variance < 0.0)
        throw std::invalid_argument("mmse_stage: noise variance must be nonnegative");

    const RealMatrix gt = realify_matrix(g_tail);
    const RealVector yt = realify_vector(residual);

    RealMatrix normal = gt.transpose() * gt;
    normal.diagonal().array() += noise_variance;

    Eigen::LLT<RealMatrix> llt(normal);
    const bool near_singular =
        noise_variance == 0.0 && llt.info() == Eigen::Success &&
        llt.rcond() < 1e3 * Eigen::NumTraits<double>::epsilon();
    if (llt.info() != Eigen::Success || near_singular)
        throw SingularSystemError("mmse_stage: regularized normal matrix is not positive "
                                  "definite (rank-deficient tail with zero noise variance)");
    return llt.solve(gt.transpose() * yt);
}

/// Nearest level per axis, lower level on an exact midpoint tie.
template <typename Derived>
Complex ideal_slice(double re_est, double im_est, const Eigen::MatrixBase<Derived>& levels) {
    return {levels(nearest_level_index(re_est, levels)),
            levels(nearest_level_index(im_est, levels))};
}

/// Slices against the voltage-domain level set of the constellation.
inline Complex ideal_slice(double re_est, double im_est, const Constellation& c) {
    return ideal_slice(re_est, im_est, c.s_value);
}

struct SicResult {
    ComplexVector symbols; // user order, normalized alphabet
    SicTrace trace;
};

/// Exact digital MMSE-SIC: order columns by norm, then per stage solve the
/// regularized least-squares system on the cancelled residual, slice the
/// leading real/imaginary pair, and cancel the decided symbol.
inline SicResult sic_detect(const ComplexMatrix& f, const ComplexVector& y,
                            double noise_variance, const Constellation& c) {
    if (f.rows() != y.size())
        throw std::invalid_argument("sic_detect: received vector does not match channel rows");

    const Index num_users = f.cols();
    SicResult result;
    SicTrace& trace = result.trace;
    trace.order = order_columns(f);
    trace.ordered_matrix.resize(f.rows(), num_users);
    for (Index k = 0; k < num_users; ++k)
        trace.ordered_matrix.col(k) = f.col(trace.order.sequence[k]);

    ComplexVector head_estimates(0);
    for (Index k = 1; k <= num_users; ++k) {
        const ComplexVector residual =
            y - trace.head_matrix(k - 1) * head_estimates;
        RealVector r = mmse_stage(trace.tail_matrix(k), residual, noise_variance);

        const double re_est = r(0);
        const double im_est = r(num_users + 1 - k); // first entry of the imaginary block
        const Complex estimate = ideal_slice(re_est, im_est, c.axis_levels);

        trace.stage_results.push_back(std::move(r));
        trace.slicer_inputs.push_back({re_est, im_est});
        trace.stage_estimates.push_back(estimate);

        head_estimates.conservativeResize(k);
        head_estimates(k - 1) = estimate;
    }

    result.symbols.resize(num_users);
    for (Index k = 0; k < num_users; ++k)
        result.symbols(trace.order.sequence[k]) = trace.stage_estimates[k];
    return result;
}

/// Equivalent floating-point operation count of the digital detector under
/// this project's documented convention: real-valued formulation; per stage
/// with n = 2(K-k+1) remaining outputs and m = 2R rows, the Gram product
/// costs 2 n^2 m, regularization n, Cholesky factorization n^3/3, the two
/// triangular solves 2 n^2, the matched filter 2 n m, and the cancellation
/// update 2 m * 2(k-1); one FLOP per real add or multiply, rounded to the
/// nearest integer at the end.
inline long long flop_count(Index num_users, Index num_bs_antennas) {
    const double m = 2.0 * static_cast<double>(num_bs_antennas);
    double total = 0.0;
    for (Index k = 1; k <= num_users; ++k) {
        const double n = 2.0 * static_cast<double>(num_users - k + 1);
        total += 2.0 * n * n * m;      // Gram product
        total += n;                    // diagonal regularization
        total += n * n * n / 3.0;      // factorization
        total += 2.0 * n * n;          // triangular solves
        total += 2.0 * n * m;          // matched filter
        total += 2.0 * m * 2.0 * static_cast<double>(k - 1); // cancellation
    }
    return std::llround(total);
}

inline long long flop_count(const MimoConfig& cfg) {
    cfg.validate();
    return flop_count(cfg.num_users, cfg.num_bs_antennas);
}

} // namespace memsic

#endif // MEMSIC_SIC_HPP

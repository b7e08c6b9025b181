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

#ifndef MEMSIC_REALIFY_HPP
#define MEMSIC_REALIFY_HPP

#include "memsic/types.hpp"

namespace memsic {

/// Stacks a complex vector as [Re(x); Im(x)] (length doubles).
template <typename Derived>
auto realify_vector(const Eigen::MatrixBase<Derived>& x) {
    using ComplexScalar = typename Derived::Scalar;
    static_assert(Eigen::NumTraits<ComplexScalar>::IsComplex,
                  "realify_vector expects a complex-valued vector");
    using Scalar = typename Eigen::NumTraits<ComplexScalar>::Real;

    const Index n = x.size();
    Eigen::Vector<Scalar, Eigen::Dynamic> out(2 * n);
    out.head(n) = x.real();
    out.tail(n) = x.imag();
    return out;
}

/// Expands a complex m-by-n matrix A into the real 2m-by-2n block matrix
/// [[Re A, -Im A], [Im A, Re A]]. Multiplicative: the expansion of A*B
/// equals the product of the expansions, and Hermitian transpose maps to
/// plain transpose.
template <typename Derived>
auto realify_matrix(const Eigen::MatrixBase<Derived>& a) {
    using ComplexScalar = typename Derived::Scalar;
    static_assert(Eigen::NumTraits<ComplexScalar>::IsComplex,
                  "realify_matrix expects a complex-valued matrix");
    using Scalar = typename Eigen::NumTraits<ComplexScalar>::Real;

    const Index m = a.rows();
    const Index n = a.cols();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(2 * m, 2 * n);
    out.topLeftCorner(m, n) = a.real();
    out.topRightCorner(m, n) = -a.imag();
    out.bottomLeftCorner(m, n) = a.imag();
    out.bottomRightCorner(m, n) = a.real();
    return out;
}

/// Inverse of realify_vector: the first half becomes the real part, the
/// second half the imaginary part.
template <typename Derived>
auto complexify_vector(const Eigen::MatrixBase<Derived>& r) {
    using Scalar = typename Derived::Scalar;
    static_assert(!Eigen::NumTraits<Scalar>::IsComplex,
                  "complexify_vector expects a real-valued vector");
    eigen_assert(r.size() % 2 == 0);

    const Index n = r.size() / 2;
    Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic> out(n);
    out.real() = r.head(n);
    out.imag() = r.tail(n);
    return out;
}

} // namespace memsic

#endif // MEMSIC_REALIFY_HPP

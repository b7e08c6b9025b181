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

#include "memsic/realify.hpp"

#include "memsic/rng.hpp"

#include <doctest.h>

using namespace memsic;

namespace {

ComplexMatrix random_complex(Index rows, Index cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = rng.complex_normal();
    return m;
}

} // namespace

TEST_CASE("realify_vector stacks real over imaginary") {
    ComplexVector x(1);
    x << Complex(1.0, 2.0);
    const RealVector r = realify_vector(x);
    REQUIRE(r.size() == 2);
    CHECK(r(0) == 1.0);
    CHECK(r(1) == 2.0);

    const RealVector zeros = realify_vector(ComplexVector::Zero(5));
    CHECK(zeros.size() == 10);
    CHECK(zeros.isZero(0.0));
}

TEST_CASE("realify_matrix maps identity to identity") {
    const RealMatrix m = realify_matrix(ComplexMatrix::Identity(3, 3));
    CHECK(m.isApprox(RealMatrix::Identity(6, 6), 0.0));
}

TEST_CASE("realified operators form a homomorphism") {
    Rng rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_complex(5, 3, rng);
        const ComplexMatrix b = random_complex(3, 4, rng);
        const ComplexVector x = random_complex(3, 1, rng);

        const RealMatrix ma = realify_matrix(a);
        const RealMatrix mb = realify_matrix(b);

        // product and Hermitian-transpose compatibility
        CHECK((ma * mb - realify_matrix((a * b).eval())).norm() <=
              1e-12 * (ma * mb).norm());
        CHECK((realify_matrix(a.adjoint().eval()) - ma.transpose()).norm() == 0.0);

        // vector compatibility
        const RealVector lhs = realify_vector((a * x).eval());
        const RealVector rhs = ma * realify_vector(x);
        CHECK((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }
}

TEST_CASE("complexify_vector inverts realify_vector") {
    Rng rng(77);
    const ComplexVector x = random_complex(7, 1, rng);
    const ComplexVector back = complexify_vector(realify_vector(x));
    CHECK((back - x).norm() == 0.0);
}

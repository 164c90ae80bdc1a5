// Copyright 2026 The sicrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sicrep/basis.hpp"

#include <cmath>

#include "sicrep/error.hpp"

namespace sicrep {

OperatorBasis basis_sigma(int d) {
    if (d < 2) throw_input("basis_sigma: dimension must be at least 2");
    OperatorBasis b;
    b.dim = d;
    b.sigmas.reserve(static_cast<std::size_t>(d) * d);
    const cplx i1(0.0, 1.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            b.sigmas.push_back(std::move(m));
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = -i1;
            m(k, j) = i1;
            b.sigmas.push_back(std::move(m));
        }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        const double c = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int q = 0; q < l; ++q) m(q, q) = c;
        m(l, l) = -c * l;
        b.sigmas.push_back(std::move(m));
    }
    b.sigmas.push_back(std::sqrt(2.0 / d) * ComplexMatrix::Identity(d, d));
    return b;
}

}  // namespace sicrep

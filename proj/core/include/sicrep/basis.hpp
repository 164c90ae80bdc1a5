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

#pragma once

#include <vector>

#include "sicrep/types.hpp"

namespace sicrep {

/// Hermitian operator basis sigma_1..sigma_{d^2} with Tr(sigma_i sigma_j) = 2 delta_ij.
/// Order: symmetric pairs (j<k, lexicographic), antisymmetric pairs,
/// diagonal members l = 1..d-1, and sqrt(2/d) 1 last. For d = 2 this is
/// (X, Y, Z, 1).
struct OperatorBasis {
    int dim = 0;
    std::vector<ComplexMatrix> sigmas;

    int size() const { return static_cast<int>(sigmas.size()); }
    const ComplexMatrix& operator[](int i) const { return sigmas[static_cast<std::size_t>(i)]; }
};

/// Throws Error(Input) for d < 2.
OperatorBasis basis_sigma(int d);

}  // namespace sicrep

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

#include "sicrep/sic.hpp"
#include "sicrep/types.hpp"

namespace sicrep {

struct DensityMatrix {
    int dim = 0;
    ComplexMatrix matrix;

    /// Hermitian and unit trace within `tol`, eigenvalues >= -`psd_tol`.
    /// Throws Error(Input) on shape problems, Error(Physicality) otherwise.
    void validate(double tol = 1e-10, double psd_tol = 1e-9) const;
};

/// SIC probability vector p_i = Tr(rho Pi_i) / d. The system dimension is
/// stored explicitly; `probs` has d^2 entries.
struct ProbVector {
    int dim = 0;
    RealVector probs;

    /// Sum to one within `tol`, entries >= -1e-12, max entry <= 1/d + 1e-9.
    void validate(double tol = 1e-10) const;
};

struct PovmSet {
    int dim = 0;
    std::vector<ComplexMatrix> effects;

    void validate(double tol = 1e-9) const;
};

/// Measurement in the probability representation: q = bigm * p.
struct MeasurementMap {
    RealMatrix mmat;  ///< m_ij = Tr(E_i Pi_j), stochastic
    RealMatrix bigm;  ///< (d+1) m - [Tr E_i] (1 ... 1), pseudostochastic
};

ProbVector state_to_prob(const DensityMatrix& rho, const SicPovm& sic);

/// rho = sum_i [(d+1) p_i - 1/d] Pi_i. Positivity is not checked.
DensityMatrix prob_to_state(const ProbVector& p, const SicPovm& sic);

/// Exact qplex test: reconstructs rho and checks its smallest eigenvalue.
bool qplex_membership(const ProbVector& p, const SicPovm& sic, double tol = 1e-9);

/// Tr(rho sigma) = d (d+1) <p, s> - 1.
double overlap(const ProbVector& p, const ProbVector& s, int dim);

MeasurementMap measurement_map(const PovmSet& povm, const SicPovm& sic);

// Qubit-only conversion to the (x, y, z) projective-measurement probabilities
// p~ = (<+|rho|+>, <R|rho|R>, <0|rho|0>), for the built-in qubit SIC ordering.

/// 3x4 matrix F with p~ = F p.
RealMatrix mub_forward_matrix();
/// 4x3 matrix T and offset c with p = T p~ + c.
RealMatrix mub_inverse_matrix();
RealVector mub_inverse_offset();

Eigen::Vector3d mub_from_sic(const ProbVector& p);
ProbVector sic_from_mub(const Eigen::Vector3d& ptilde);

}  // namespace sicrep

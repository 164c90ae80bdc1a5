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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sicrep/types.hpp"

namespace sicrep {

/// A normalized fiducial vector whose Weyl-Heisenberg orbit is expected to
/// form a SIC. Fiducials are ingested from published solution files.
struct Fiducial {
    int dim = 0;
    ComplexVector amplitudes;

    /// Throws Error(Input) on a shape problem, Error(Physicality) if the
    /// amplitudes are not normalized within `tol`.
    void validate(double tol = 1e-12) const;
};

/// Deviations of a projector family from the SIC conditions.
struct SicReport {
    double gram_deviation = 0.0;      ///< max |Tr(P_i P_j) - (d delta_ij + 1)/(d+1)|
    double completeness_deviation = 0.0;  ///< max |sum_i P_i - d 1|
    double projector_deviation = 0.0; ///< max over i of Hermiticity, trace and idempotence errors
    double tolerance = 0.0;
    bool pass = false;

    double max_deviation() const;
};

/// Checks an arbitrary family of d^2 matrices against the SIC conditions.
SicReport verify_projectors(int dim, std::span<const ComplexMatrix> projectors, double tol = 1e-8);

/// A dimension-d SIC-POVM {Pi_i / d}: d^2 rank-1 projectors together with the
/// transition matrices K (probabilities -> vectorized operators) and K^{-1}.
/// Immutable after construction.
class SicPovm {
public:
    /// Tetrahedral qubit SIC with Bloch vectors (+,-,+), (+,+,-), (-,+,+), (-,-,-) / sqrt(3).
    static SicPovm builtin_qubit();

    /// Orbit X^a Z^b |f> for a, b in 0..d-1, ordered row-major in (a, b).
    /// Throws Error(Physicality) if the orbit is not a SIC within `tol`.
    static SicPovm from_fiducial(const Fiducial& f, double tol = 1e-8);

    /// Adopts an explicit projector list (for example an imported SIC file).
    /// Throws Error(Physicality) if verification fails within `tol`.
    static SicPovm from_projectors(int dim, std::vector<ComplexMatrix> projectors, double tol = 1e-8);

    int dim() const { return dim_; }
    int size() const { return dim_ * dim_; }

    std::span<const ComplexMatrix> projectors() const { return projectors_; }
    const ComplexMatrix& projector(int i) const { return projectors_.at(static_cast<std::size_t>(i)); }

    /// Unit vectors |psi_i> with Pi_i = |psi_i><psi_i| (phases arbitrary).
    std::span<const ComplexVector> states() const { return states_; }

    /// Column i is vec((d+1) Pi_i - 1).
    const ComplexMatrix& kmat() const { return kmat_; }
    /// Row i is vec(Pi_i)^dagger / d.
    const ComplexMatrix& kinv() const { return kinv_; }

    /// "builtin-qubit" or "fiducial:<hash>" / "projectors:<hash>".
    const std::string& label() const { return label_; }

    SicReport verify(double tol = 1e-8) const;

private:
    SicPovm(int dim, std::vector<ComplexMatrix> projectors, std::vector<ComplexVector> states, std::string label);

    int dim_ = 0;
    std::vector<ComplexMatrix> projectors_;
    std::vector<ComplexVector> states_;
    ComplexMatrix kmat_;
    ComplexMatrix kinv_;
    std::string label_;
};

/// Weyl-Heisenberg displacement X^a Z^b in dimension d.
ComplexMatrix weyl_heisenberg(int dim, int a, int b);

/// FNV-1a hash of the amplitudes rounded to 1e-12, as 16 hex digits.
std::string fiducial_hash(const Fiducial& f);

}  // namespace sicrep

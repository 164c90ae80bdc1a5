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

#include <functional>
#include <string_view>
#include <vector>

#include "sicrep/optimize.hpp"
#include "sicrep/repr.hpp"
#include "sicrep/sic.hpp"
#include "sicrep/types.hpp"

namespace sicrep {

/// d_out^2 x d_in^2 real matrix acting on SIC probability vectors. Columns
/// sum to one; entries may be negative.
struct PseudoStochMatrix {
    int dim_in = 0;
    int dim_out = 0;
    RealMatrix matrix;

    /// Throws Error(Input) on a shape mismatch or non-finite entries and
    /// Error(Physicality) if a column sum deviates from 1 by more than `tol`.
    void validate(double tol = 1e-9) const;
};

struct KrausChannel {
    int dim_in = 0;
    int dim_out = 0;
    std::vector<ComplexMatrix> kraus;  ///< d_out x d_in each

    /// Throws Error(Input) on shape problems and Error(Physicality) if
    /// sum_k A_k^dagger A_k differs from the identity by more than `tol`.
    void validate(double tol = 1e-9) const;

    /// sum_k A_k (x) conj(A_k), acting on row-major vectorized operators.
    ComplexMatrix superoperator() const;
};

/// rho_Phi = (1/d_in) sum_ij |i><j| (x) Phi(|i><j|), input factor first.
struct ChoiMatrix {
    int dim_in = 0;
    int dim_out = 0;
    ComplexMatrix matrix;
};

/// Pseudostochastic form of a superoperator: K_out^{-1} A K_in, real part.
/// Throws Error(Domain) if the imaginary residual exceeds 1e-8.
RealMatrix sic_frame(const ComplexMatrix& superop, const SicPovm& sic_out, const SicPovm& sic_in);

PseudoStochMatrix kraus_to_pstoch(const KrausChannel& ch, const SicPovm& sic_in, const SicPovm& sic_out);

/// S_ij = (1/d_out) Tr[Pi_i^out Phi((d_in + 1) Pi_j^in - 1)] for any linear map.
/// Column sums are not checked, so non-trace-preserving maps are accepted.
RealMatrix pstoch_from_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, const SicPovm& sic_in,
                           const SicPovm& sic_out);

enum class PtpMap { Transposition, Reduction };

/// "transposition" or "reduction"; throws Error(Input) otherwise.
PtpMap parse_ptp(std::string_view name);

/// Transposition X -> X^T or reduction X -> Tr(X) 1 - X, both positive and
/// trace preserving but not completely positive.
PseudoStochMatrix builtin_ptp(PtpMap map, const SicPovm& sic);

ChoiMatrix pstoch_to_choi(const PseudoStochMatrix& s, const SicPovm& sic_in, const SicPovm& sic_out);
PseudoStochMatrix choi_to_pstoch(const ChoiMatrix& choi, const SicPovm& sic_in, const SicPovm& sic_out);

/// Kraus operators from the eigendecomposition of a positive Choi matrix;
/// eigenvalues below `tol` are dropped. Throws Error(Physicality) if an
/// eigenvalue is below -`tol`.
KrausChannel choi_to_kraus(const ChoiMatrix& choi, double tol = 1e-9);

struct CptpReport {
    double min_eigenvalue = 0.0;        ///< smallest eigenvalue of rho_Phi
    double tp_deviation = 0.0;          ///< max |Tr_out rho_Phi - 1/d_in|
    double hermiticity_deviation = 0.0; ///< max |rho_Phi - rho_Phi^dagger|
    double tolerance = 0.0;
    bool cptp = false;
};

/// Report only; never throws on physically invalid input. Shape errors
/// still raise Error(Input).
CptpReport is_cptp(const PseudoStochMatrix& s, const SicPovm& sic_in, const SicPovm& sic_out, double tol = 1e-9);

struct CptpProjection {
    PseudoStochMatrix s;
    KrausChannel kraus;
    double distance = 0.0;      ///< Frobenius distance to the raw matrix
    double tp_residual = 0.0;   ///< |sum_k A_k^dagger A_k - 1| before rescaling
    double grad_norm = 0.0;
    int restarts_converged = 0;
};

/// Closest CPTP pseudostochastic matrix to `s_raw` in Frobenius norm. The
/// search runs over Kraus coefficient matrices V in the sigma basis with a
/// ramped trace-preservation penalty, followed by an exact rescaling
/// A_k -> A_k X^{-1/2}. Requires sic_in.dim() == sic_out.dim().
CptpProjection project_cptp(const RealMatrix& s_raw, const SicPovm& sic_in, const SicPovm& sic_out,
                            const OptConfig& opt = {});

PseudoStochMatrix compose(const PseudoStochMatrix& s2, const PseudoStochMatrix& s1);
ProbVector apply(const PseudoStochMatrix& s, const ProbVector& p);

}  // namespace sicrep

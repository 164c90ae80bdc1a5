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
#include <optional>
#include <vector>

#include "sicrep/basis.hpp"
#include "sicrep/channels.hpp"
#include "sicrep/optimize.hpp"
#include "sicrep/sic.hpp"
#include "sicrep/types.hpp"

namespace sicrep {

/// Real antisymmetric d^2 x d^2 matrices H^(i) = -i K^{-1}(sigma_i x 1 - 1 x conj(sigma_i)) K
/// for the d^2 - 1 traceless sigma members. Tr(H^(i) H^(j)^T) = 4d delta_ij.
struct UnitaryGenBasis {
    int dim = 0;
    std::vector<RealMatrix> hmats;

    int size() const { return static_cast<int>(hmats.size()); }
    const RealMatrix& operator[](int i) const { return hmats[static_cast<std::size_t>(i)]; }
};

UnitaryGenBasis basis_hunit(const SicPovm& sic);

/// Generator of dp/dt = L p. Columns sum to zero. When both parts are set,
/// matrix = h_part + d_part.
struct Generator {
    int dim = 0;
    RealMatrix matrix;
    std::optional<RealMatrix> h_part;
    std::optional<RealMatrix> d_part;

    /// Throws Error(Input) on shape problems and Error(Physicality) if column
    /// sums or the part decomposition are off by more than `tol`.
    void validate(double tol = 1e-9) const;
};

struct GkslSpec {
    int dim = 0;
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> noise_ops;

    /// Throws Error(Input) on shape problems, Error(Physicality) if H is not
    /// Hermitian within `tol`.
    void validate(double tol = 1e-10) const;

    /// C = H - (i/2) sum_k V_k^dagger V_k.
    ComplexMatrix effective_hamiltonian() const;

    /// Lambda = -i (C x 1 - 1 x conj(C)) + sum_k V_k x conj(V_k).
    ComplexMatrix superoperator() const;
};

/// L(rho) = -i[H, rho] + sum_k (V_k rho V_k^dagger - {V_k^dagger V_k, rho}/2).
ComplexMatrix gksl_apply(const GkslSpec& spec, const ComplexMatrix& rho);

/// -i K^{-1}(H x 1 - 1 x conj(H)) K. Throws Error(Physicality) for non-Hermitian H.
Generator hgen_from_hamiltonian(const ComplexMatrix& h, const SicPovm& sic);

/// H_ij = (2(d+1)/d) Im[<psi_j|psi_i><psi_i|H|psi_j>], evaluated entrywise.
Generator hgen_overlap_form(const ComplexMatrix& h, const SicPovm& sic);

/// (1/4d) sum_i Tr(H^(i)^T M) H^(i).
RealMatrix project_unit(const RealMatrix& m, const UnitaryGenBasis& basis);

/// exp(H t) for a generator in the span of the H^(i). Throws Error(Input)
/// when |P_unit(H) - H| exceeds 1e-8.
PseudoStochMatrix evolve_unitary(const Generator& g, double t, const UnitaryGenBasis& basis);

/// exp(L t).
PseudoStochMatrix evolve(const Generator& g, double t);

/// Midpoint product exp(L(t_{n-1}) dt) ... exp(L(t_0) dt), t_k = (k + 1/2) dt.
/// Throws Error(Input) for steps < 1 or t < 0.
PseudoStochMatrix evolve_time_ordered(const std::function<RealMatrix(double)>& gen, int dim, double t, int steps);

/// 1000 steps per unit time, at least one.
int default_time_steps(double t);

/// K^{-1} Lambda K with H and D parts populated.
Generator lgen_from_gksl(const GkslSpec& spec, const SicPovm& sic);

/// K_ij = Tr[P_i L(P_j)] for P_i = |e_i><e_i| over the given orthonormal vectors.
RealMatrix kolmogorov_matrix(const GkslSpec& spec, const std::vector<ComplexVector>& basis_states);

/// Omega_ij = K^{-1}(sigma_i x conj(sigma_j) - 1/2 sigma_j sigma_i x 1 - 1/2 1 x conj(sigma_i) conj(sigma_j)) K,
/// i, j over all d^2 sigma members (identity included). The basis must list
/// its traceless members first and a multiple of the identity last.
class OmegaBasis {
public:
    OmegaBasis(const SicPovm& sic, const OperatorBasis& basis);

    int dim() const { return dim_; }
    int size() const { return n_; }
    const ComplexMatrix& operator()(int i, int j) const { return omegas_[static_cast<std::size_t>(i * n_ + j)]; }
    const UnitaryGenBasis& unitary_basis() const { return hunit_; }

private:
    int dim_ = 0;
    int n_ = 0;
    UnitaryGenBasis hunit_;
    std::vector<ComplexMatrix> omegas_;
};

/// sum_ij [V V^dagger]_ij Omega_ij.
RealMatrix dgen_from_v(const ComplexMatrix& v, const OmegaBasis& omega);

struct MarkProjection {
    RealMatrix d_part;      ///< (1 - P_unit) D(V*)
    double residual = 0.0;  ///< Frobenius distance |d_part - D~|
    ComplexMatrix v;        ///< d^2 x d^2, identity row zero
    double grad_norm = 0.0;
    int restarts_converged = 0;
};

/// Closest dissipative generator to `dtilde` modulo the unitary span:
/// minimizes |(1 - P_unit)(D(V) - dtilde)|_F over V supported on the
/// traceless sigma members. For dtilde orthogonal to the unitary span this is
/// the infimum of |D(V) - dtilde|_F over all d^2 x d^2 V, and
/// P_unit(L) + d_part is again a GKSL generator.
MarkProjection project_mark(const RealMatrix& dtilde, const SicPovm& sic, const OptConfig& opt = {});
MarkProjection project_mark(const RealMatrix& dtilde, const OmegaBasis& omega, const OptConfig& opt = {});

struct MarkovianCheck {
    bool markovian = false;
    double residual = 0.0;  ///< |P_unit(L) + P_Mark(L - P_unit(L)) - L|_F
};

MarkovianCheck is_time_independent_markovian(const Generator& g, const SicPovm& sic, double tol = 1e-6,
                                             const OptConfig& opt = {});

}  // namespace sicrep

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

#include <string>
#include <vector>

#include "sicrep/channels.hpp"
#include "sicrep/dynamics.hpp"
#include "sicrep/optimize.hpp"
#include "sicrep/repr.hpp"

namespace sicrep {

/// True iff every off-diagonal entry is >= -tol, i.e. exp(L t) is stochastic
/// for all t > 0.
bool classicality_check(const Generator& g, double tol = 1e-12);

/// max over i != j of max(0, -M_ij).
double negativity(const RealMatrix& m);

struct DeltaQuantReport {
    double value = 0.0;
    RealVector lambda;          ///< minimizer in the H^(i) coordinates
    int restarts_agreeing = 0;  ///< restarts ending within 1e-3 of the best value
    int restarts = 0;
};

/// Smallest negativity N(U L U^T) over U = exp(sum_i lambda_i H^(i)): how far
/// L stays from a classical generator in every SIC frame reachable by a
/// unitary. Multi-start Nelder-Mead with |lambda_i| <= 4 pi followed by a
/// coordinate polish; restart 0 starts at lambda = 0.
DeltaQuantReport delta_quant(const RealMatrix& l, const UnitaryGenBasis& basis,
                             const OptConfig& opt = OptConfig::simplex_defaults());

struct MarkovReport {
    PseudoStochMatrix s_mark;
    RealMatrix log;           ///< L = log S
    RealMatrix h_part;        ///< P_unit(L)
    RealMatrix d_part;        ///< P_Mark(L - P_unit(L))
    double log_residual = 0;  ///< |h_part + d_part - L|_F
    double delta_nmark = 0;   ///< (1/d^2) sqrt(|S - S_mark|_F^2)
};

/// S_mark = exp(P_unit(L) + P_Mark(L - P_unit(L))), L = log S.
/// Throws Error(Domain) listing the offending eigenvalues if S has no real
/// principal logarithm.
MarkovReport markov_projection(const PseudoStochMatrix& s, const SicPovm& sic, const OptConfig& opt = {});

/// Same for a measured d^2 x d^2 matrix whose columns need not sum to one
/// exactly (for example rounded tabulated data).
MarkovReport markov_projection(const RealMatrix& s, const SicPovm& sic, const OptConfig& opt = {});

double delta_nmark(const PseudoStochMatrix& s, const SicPovm& sic, const OptConfig& opt = {});

/// p_Y = M S_n ... S_1 G p_X.
struct ExperimentScheme {
    RealMatrix prep;  ///< columns are SIC probability vectors of the prepared states
    std::vector<PseudoStochMatrix> channels;
    MeasurementMap meas;
};

struct ExperimentResult {
    RealMatrix q;
    std::vector<std::string> warnings;
};

/// Q = M (prod channels) G. Throws Error(Input) on a dimension mismatch and
/// Error(Physicality) if a column of Q does not sum to one; negative entries
/// below -1e-9 only produce warnings. When `sic` is given, each preparation
/// column is also checked for qplex membership.
ExperimentResult experiment_compose(const ExperimentScheme& e, const SicPovm* sic = nullptr);

}  // namespace sicrep

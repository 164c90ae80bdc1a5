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
#include <string>

#include "sicrep/channels.hpp"
#include "sicrep/measures.hpp"
#include "sicrep/optimize.hpp"
#include "sicrep/sic.hpp"

namespace sicrep {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// counts(i, j): number of outcome-j events after preparing SIC state i.
struct CountsRecord {
    int dim = 0;
    std::int64_t shots = 0;
    CountMatrix counts;

    /// Throws Error(Input) unless counts is d^2 x d^2, non-negative, and
    /// every row sums to `shots` >= 1.
    void validate() const;
};

/// Row i is the empirical output distribution for input state i.
RealMatrix freq_from_counts(const CountsRecord& c);

/// P_ij = Tr(Pi_i Pi_j) / d, row i the SIC probabilities of input state i.
RealMatrix input_matrix(const SicPovm& sic);

/// Solves P S^T = F and replaces the last row by one minus the others so
/// that columns sum to one. Throws Error(Domain) if P is singular.
RealMatrix reconstruct_raw(const RealMatrix& freqs, const SicPovm& sic);

/// Exact forward model: row i is (S p_i)^T.
RealMatrix exact_frequencies(const RealMatrix& s, const SicPovm& sic);

/// Per-entry statistical error bound 1/sqrt(N). Throws Error(Input) for N < 1.
double error_estimate(std::int64_t shots);

/// Multinomial counts drawn from the clipped and renormalized rows of
/// exact_frequencies(s). Deterministic given `seed`.
CountsRecord simulate_counts(const RealMatrix& s, const SicPovm& sic, std::int64_t shots, std::uint64_t seed);

enum class CalibrationOrder {
    ProjectThenInvert,  ///< project both raw matrices, invert, project the product again
    InvertThenProject,  ///< invert the raw reference, project the product
};

CalibrationOrder parse_calibration_order(const std::string& name);
const char* to_string(CalibrationOrder order);

struct Calibration {
    PseudoStochMatrix s_dec;
    PseudoStochMatrix s_dec_u;
    RealMatrix s_u_raw;  ///< S_dec^{-1} S_decU before the final projection
    PseudoStochMatrix s_u;
    double condition = 0.0;  ///< condition number of the inverted reference
    CalibrationOrder order = CalibrationOrder::ProjectThenInvert;
};

/// Separates the target operation from the reference noise: S_U from
/// S_decU = S_dec S_U. Throws Error(Domain) when the reference has condition
/// number above 1e8.
Calibration calibrate(const RealMatrix& s_dec_raw, const RealMatrix& s_dec_u_raw, const SicPovm& sic,
                      const OptConfig& opt = {}, CalibrationOrder order = CalibrationOrder::ProjectThenInvert);

struct ReconstructionReport {
    RealMatrix s_raw;
    PseudoStochMatrix s_cptp;
    double per_entry_error = 0.0;
    double projection_distance = 0.0;
    std::int64_t shots = 0;
};

ReconstructionReport reconstruct(const CountsRecord& c, const SicPovm& sic, const OptConfig& opt = {});

struct PipelineReport {
    ReconstructionReport main;       ///< reference noise followed by the target operation
    ReconstructionReport reference;  ///< reference noise alone
    Calibration calibration;
    MarkovReport markov_u;
    MarkovReport markov_dec;
    DeltaQuantReport quant_u;
    DeltaQuantReport quant_dec;
    std::uint64_t seed = 0;
};

/// Counts -> frequencies -> raw matrices -> CPTP projection -> calibration ->
/// generator parts -> delta_quant and delta_nmark for S_U and S_dec.
/// Throws Error(Input) if the records disagree in dimension or shot count.
PipelineReport run_pipeline(const CountsRecord& counts_main, const CountsRecord& counts_ref, const SicPovm& sic,
                            const OptConfig& opt = {}, CalibrationOrder order = CalibrationOrder::ProjectThenInvert);

}  // namespace sicrep

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

#include "sicrep/tomography.hpp"

#include <cmath>
#include <sstream>

#include "sicrep/error.hpp"
#include "sicrep/numerics.hpp"

namespace sicrep {

void CountsRecord::validate() const {
    if (dim < 1) throw_input("counts: dimension must be positive");
    const int n = dim * dim;
    if (counts.rows() != n || counts.cols() != n) throw_input("counts: table must be d^2 x d^2");
    if (shots < 1) throw_input("counts: shots must be at least 1");
    for (Eigen::Index i = 0; i < n; ++i) {
        if ((counts.row(i).array() < 0).any()) throw_input("counts: negative count");
        const std::int64_t total = counts.row(i).sum();
        if (total != shots) {
            std::ostringstream os;
            os << "counts: row " << i << " sums to " << total << " instead of " << shots;
            throw_input(os.str());
        }
    }
}

RealMatrix freq_from_counts(const CountsRecord& c) {
    c.validate();
    return c.counts.cast<double>() / static_cast<double>(c.shots);
}

RealMatrix input_matrix(const SicPovm& sic) {
    const int n = sic.size();
    RealMatrix p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = (sic.projector(i) * sic.projector(j)).trace().real() / sic.dim();
    return p;
}

RealMatrix reconstruct_raw(const RealMatrix& freqs, const SicPovm& sic) {
    const int n = sic.size();
    if (freqs.rows() != n || freqs.cols() != n) throw_input("reconstruct_raw: frequency table must be d^2 x d^2");
    RealMatrix s = numerics::solve(input_matrix(sic), freqs).transpose();
    s.row(n - 1) = RealVector::Ones(n).transpose() - s.topRows(n - 1).colwise().sum();
    return s;
}

RealMatrix exact_frequencies(const RealMatrix& s, const SicPovm& sic) {
    const int n = sic.size();
    if (s.rows() != n || s.cols() != n) throw_input("exact_frequencies: matrix must be d^2 x d^2");
    return input_matrix(sic) * s.transpose();
}

double error_estimate(std::int64_t shots) {
    if (shots < 1) throw_input("error_estimate: shots must be at least 1");
    return 1.0 / std::sqrt(static_cast<double>(shots));
}

CountsRecord simulate_counts(const RealMatrix& s, const SicPovm& sic, std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw_input("simulate_counts: shots must be at least 1");
    const RealMatrix probs = exact_frequencies(s, sic).cwiseMax(0.0);
    const int n = sic.size();
    CountsRecord rec{sic.dim(), shots, CountMatrix::Zero(n, n)};
    opt::Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        const double total = probs.row(i).sum();
        if (!(total > 0.0)) throw_physicality("simulate_counts: output distribution vanishes");
        for (std::int64_t k = 0; k < shots; ++k) {
            double u = rng.uniform() * total;
            int j = 0;
            while (j < n - 1 && u >= probs(i, j)) u -= probs(i, j++);
            ++rec.counts(i, j);
        }
    }
    return rec;
}

CalibrationOrder parse_calibration_order(const std::string& name) {
    if (name == "project-then-invert") return CalibrationOrder::ProjectThenInvert;
    if (name == "invert-then-project") return CalibrationOrder::InvertThenProject;
    throw_input("unknown calibration order '" + name + "' (expected project-then-invert or invert-then-project)");
}

const char* to_string(CalibrationOrder order) {
    return order == CalibrationOrder::ProjectThenInvert ? "project-then-invert" : "invert-then-project";
}

Calibration calibrate(const RealMatrix& s_dec_raw, const RealMatrix& s_dec_u_raw, const SicPovm& sic,
                      const OptConfig& opt, CalibrationOrder order) {
    const int n = sic.size();
    if (s_dec_raw.rows() != n || s_dec_raw.cols() != n || s_dec_u_raw.rows() != n || s_dec_u_raw.cols() != n)
        throw_input("calibrate: raw matrices must be d^2 x d^2");
    Calibration cal;
    cal.order = order;
    cal.s_dec = project_cptp(s_dec_raw, sic, sic, opt).s;
    cal.s_dec_u = project_cptp(s_dec_u_raw, sic, sic, opt).s;
    const RealMatrix& ref = order == CalibrationOrder::ProjectThenInvert ? cal.s_dec.matrix : s_dec_raw;
    const RealMatrix& combined = order == CalibrationOrder::ProjectThenInvert ? cal.s_dec_u.matrix : s_dec_u_raw;
    cal.condition = numerics::condition_number(ref);
    if (!(cal.condition <= 1e8)) {
        std::ostringstream os;
        os << "calibrate: reference matrix is numerically singular (condition number " << cal.condition << ")";
        throw_domain(os.str());
    }
    cal.s_u_raw = numerics::solve(ref, combined);
    cal.s_u = project_cptp(cal.s_u_raw, sic, sic, opt).s;
    return cal;
}

ReconstructionReport reconstruct(const CountsRecord& c, const SicPovm& sic, const OptConfig& opt) {
    if (c.dim != sic.dim()) throw_input("reconstruct: counts dimension does not match the SIC");
    ReconstructionReport rep;
    rep.shots = c.shots;
    rep.s_raw = reconstruct_raw(freq_from_counts(c), sic);
    const CptpProjection proj = project_cptp(rep.s_raw, sic, sic, opt);
    rep.s_cptp = proj.s;
    rep.projection_distance = proj.distance;
    rep.per_entry_error = error_estimate(c.shots);
    return rep;
}

PipelineReport run_pipeline(const CountsRecord& counts_main, const CountsRecord& counts_ref, const SicPovm& sic,
                            const OptConfig& opt, CalibrationOrder order) {
    if (counts_main.dim != counts_ref.dim) throw_input("run_pipeline: count records have different dimensions");
    if (counts_main.shots != counts_ref.shots) throw_input("run_pipeline: count records have different shot counts");
    PipelineReport rep;
    rep.seed = opt.seed;
    rep.main = reconstruct(counts_main, sic, opt);
    rep.reference = reconstruct(counts_ref, sic, opt);
    rep.calibration = calibrate(rep.reference.s_raw, rep.main.s_raw, sic, opt, order);
    rep.markov_u = markov_projection(rep.calibration.s_u, sic, opt);
    rep.markov_dec = markov_projection(rep.calibration.s_dec, sic, opt);
    const UnitaryGenBasis basis = basis_hunit(sic);
    OptConfig quant = OptConfig::simplex_defaults();
    quant.seed = opt.seed;
    quant.parallel = opt.parallel;
    rep.quant_u = delta_quant(RealMatrix(rep.markov_u.h_part + rep.markov_u.d_part), basis, quant);
    rep.quant_dec = delta_quant(RealMatrix(rep.markov_dec.h_part + rep.markov_dec.d_part), basis, quant);
    return rep;
}

}  // namespace sicrep

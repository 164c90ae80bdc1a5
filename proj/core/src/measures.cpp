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

#include "sicrep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sicrep/error.hpp"
#include "sicrep/numerics.hpp"

namespace sicrep {

bool classicality_check(const Generator& g, double tol) {
    const auto n = g.matrix.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < g.matrix.cols(); ++j)
            if (i != j && g.matrix(i, j) < -tol) return false;
    return true;
}

double negativity(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw_input("negativity: matrix must be square");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j) worst = std::max(worst, -m(i, j));
    return worst;
}

namespace {

constexpr double kLambdaBound = 4.0 * std::numbers::pi;

RealVector clamp_lambda(const RealVector& x) { return x.cwiseMax(-kLambdaBound).cwiseMin(kLambdaBound); }

struct Conjugation {
    const RealMatrix& l;
    const UnitaryGenBasis& basis;

    double operator()(const RealVector& raw) const {
        const RealVector x = clamp_lambda(raw);
        RealMatrix gen = RealMatrix::Zero(l.rows(), l.cols());
        for (int i = 0; i < basis.size(); ++i) gen += x(i) * basis[i];
        const RealMatrix u = numerics::expm(gen);
        return negativity(u * l * u.transpose());
    }
};

opt::LocalResult quant_restart(const Conjugation& f, const RealVector& x0, const OptConfig& opt) {
    opt::LocalResult local = opt::nelder_mead(f, x0, 0.5, opt.max_iter, 1e-10, 1e-14);
    opt::LocalResult polished = opt::coordinate_polish(f, local.x, 0.05, 1e-9);
    polished.x = clamp_lambda(polished.x);
    polished.iterations += local.iterations;
    return polished;
}

}  // namespace

DeltaQuantReport delta_quant(const RealMatrix& l, const UnitaryGenBasis& basis, const OptConfig& opt) {
    const int n = basis.dim * basis.dim;
    if (l.rows() != n || l.cols() != n) throw_input("delta_quant: generator must be d^2 x d^2");
    if (!l.allFinite()) throw_input("delta_quant: non-finite entry");
    opt.validate();
    const Conjugation f{l, basis};
    const int m = basis.size();

    std::vector<RealVector> starts;
    for (int k = 0; k < opt.restarts; ++k) {
        RealVector x0 = RealVector::Zero(m);
        if (k > 0) {
            opt::Rng rng(opt.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k));
            for (int i = 0; i < m; ++i) x0(i) = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
        starts.push_back(std::move(x0));
    }
    std::vector<opt::LocalResult> results(starts.size());
    if (opt.parallel && starts.size() > 1) {
        std::vector<std::future<opt::LocalResult>> futures;
        for (const auto& s : starts)
            futures.push_back(std::async(std::launch::async, [&, s] { return quant_restart(f, s, opt); }));
        for (std::size_t k = 0; k < futures.size(); ++k) results[k] = futures[k].get();
    } else {
        for (std::size_t k = 0; k < starts.size(); ++k) results[k] = quant_restart(f, starts[k], opt);
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < results.size(); ++k)
        if (results[k].value < results[best].value) best = k;
    if (!std::isfinite(results[best].value)) throw_optimizer("delta_quant: no finite objective value found");

    DeltaQuantReport rep;
    rep.value = results[best].value;
    rep.lambda = results[best].x;
    rep.restarts = static_cast<int>(results.size());
    for (const auto& r : results)
        if (r.value <= rep.value + 1e-3) ++rep.restarts_agreeing;
    return rep;
}

MarkovReport markov_projection(const PseudoStochMatrix& s, const SicPovm& sic, const OptConfig& opt) {
    s.validate(1e-6);
    if (s.dim_in != s.dim_out || s.dim_in != sic.dim()) throw_input("markov_projection: dimensions do not match the SIC");
    return markov_projection(s.matrix, sic, opt);
}

MarkovReport markov_projection(const RealMatrix& s, const SicPovm& sic, const OptConfig& opt) {
    if (s.rows() != sic.size() || s.cols() != sic.size()) throw_input("markov_projection: matrix must be d^2 x d^2");
    if (!s.allFinite()) throw_input("markov_projection: non-finite entry");
    const int d = sic.dim();

    Eigen::EigenSolver<RealMatrix> es(s, false);
    const Eigen::VectorXcd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::ostringstream bad;
    bool offending = false;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const cplx z = ev(i);
        if (std::abs(z) <= 1e-12 * scale || (std::abs(z.imag()) <= 1e-10 * scale && z.real() <= 0.0)) {
            bad << (offending ? ", " : "") << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
            offending = true;
        }
    }
    if (offending) throw_domain("markov_projection: no real principal logarithm; offending eigenvalues " + bad.str());

    MarkovReport rep;
    rep.log = numerics::logm_real(s);
    rep.h_part = project_unit(rep.log, basis_hunit(sic));
    const MarkProjection mark = project_mark(RealMatrix(rep.log - rep.h_part), sic, opt);
    rep.d_part = mark.d_part;
    rep.log_residual = (rep.h_part + rep.d_part - rep.log).norm();
    rep.s_mark = {d, d, numerics::expm(RealMatrix(rep.h_part + rep.d_part))};
    const double n = static_cast<double>(sic.size());
    rep.delta_nmark = std::sqrt(numerics::frobenius_dist(s, rep.s_mark.matrix)) / n;
    return rep;
}

double delta_nmark(const PseudoStochMatrix& s, const SicPovm& sic, const OptConfig& opt) {
    return markov_projection(s, sic, opt).delta_nmark;
}

ExperimentResult experiment_compose(const ExperimentScheme& e, const SicPovm* sic) {
    ExperimentResult out;
    RealMatrix acc = e.prep;
    if (sic && e.prep.rows() != sic->size()) throw_input("experiment_compose: preparation rows must equal d^2");
    if (sic) {
        for (Eigen::Index c = 0; c < e.prep.cols(); ++c) {
            const ProbVector p{sic->dim(), e.prep.col(c)};
            if (!qplex_membership(p, *sic)) {
                std::ostringstream os;
                os << "experiment_compose: preparation column " << c << " is not a valid state";
                throw_physicality(os.str());
            }
        }
    }
    for (const auto& ch : e.channels) {
        if (ch.matrix.cols() != acc.rows()) throw_input("experiment_compose: channel dimensions do not chain");
        acc = ch.matrix * acc;
    }
    if (e.meas.bigm.cols() != acc.rows()) throw_input("experiment_compose: measurement does not match the state space");
    out.q = e.meas.bigm * acc;
    const double dev = out.q.size() ? (out.q.colwise().sum().array() - 1.0).abs().maxCoeff() : 0.0;
    if (dev > 1e-9) {
        std::ostringstream os;
        os << "experiment_compose: columns of Q deviate from unit sum by " << dev;
        throw_physicality(os.str());
    }
    const double low = out.q.size() ? out.q.minCoeff() : 0.0;
    if (low < -1e-9) {
        std::ostringstream os;
        os << "Q has a negative entry " << low;
        out.warnings.push_back(os.str());
    }
    return out;
}

}  // namespace sicrep

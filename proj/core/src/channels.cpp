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

#include "sicrep/channels.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "sicrep/basis.hpp"
#include "sicrep/error.hpp"
#include "sicrep/numerics.hpp"

namespace sicrep {

namespace {

void require_dims(const SicPovm& sic_in, const SicPovm& sic_out, int dim_in, int dim_out, const char* what) {
    if (sic_in.dim() != dim_in || sic_out.dim() != dim_out) {
        std::ostringstream os;
        os << what << ": SIC dimensions (" << sic_in.dim() << ", " << sic_out.dim() << ") do not match ("
           << dim_in << ", " << dim_out << ")";
        throw_input(os.str());
    }
}

}  // namespace

void PseudoStochMatrix::validate(double tol) const {
    if (dim_in < 1 || dim_out < 1) throw_input("PseudoStochMatrix: dimensions must be positive");
    if (matrix.rows() != dim_out * dim_out || matrix.cols() != dim_in * dim_in)
        throw_input("PseudoStochMatrix: matrix must be d_out^2 x d_in^2");
    if (!matrix.allFinite()) throw_input("PseudoStochMatrix: non-finite entry");
    const double dev = (matrix.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (dev > tol) {
        std::ostringstream os;
        os << "PseudoStochMatrix: column sums deviate from 1 by " << dev;
        throw_physicality(os.str());
    }
}

void KrausChannel::validate(double tol) const {
    if (dim_in < 1 || dim_out < 1) throw_input("KrausChannel: dimensions must be positive");
    if (kraus.empty()) throw_input("KrausChannel: empty Kraus list");
    ComplexMatrix acc = ComplexMatrix::Zero(dim_in, dim_in);
    for (const auto& a : kraus) {
        if (a.rows() != dim_out || a.cols() != dim_in) throw_input("KrausChannel: Kraus operator must be d_out x d_in");
        if (!a.allFinite()) throw_input("KrausChannel: non-finite entry");
        acc += a.adjoint() * a;
    }
    const double dev = (acc - ComplexMatrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
    if (dev > tol) {
        std::ostringstream os;
        os << "KrausChannel: sum of A^dagger A deviates from identity by " << dev;
        throw_physicality(os.str());
    }
}

ComplexMatrix KrausChannel::superoperator() const {
    ComplexMatrix a = ComplexMatrix::Zero(dim_out * dim_out, dim_in * dim_in);
    for (const auto& k : kraus) a += numerics::kron(k, ComplexMatrix(k.conjugate()));
    return a;
}

RealMatrix sic_frame(const ComplexMatrix& superop, const SicPovm& sic_out, const SicPovm& sic_in) {
    const ComplexMatrix m = sic_out.kinv() * superop * sic_in.kmat();
    return numerics::checked_real(m, 1e-8, "sic_frame");
}

PseudoStochMatrix kraus_to_pstoch(const KrausChannel& ch, const SicPovm& sic_in, const SicPovm& sic_out) {
    ch.validate();
    require_dims(sic_in, sic_out, ch.dim_in, ch.dim_out, "kraus_to_pstoch");
    PseudoStochMatrix s{ch.dim_in, ch.dim_out, sic_frame(ch.superoperator(), sic_out, sic_in)};
    s.validate();
    return s;
}

RealMatrix pstoch_from_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, const SicPovm& sic_in,
                           const SicPovm& sic_out) {
    const int din = sic_in.dim();
    const int dout = sic_out.dim();
    const ComplexMatrix id = ComplexMatrix::Identity(din, din);
    RealMatrix s(sic_out.size(), sic_in.size());
    for (int j = 0; j < sic_in.size(); ++j) {
        const ComplexMatrix image = map((din + 1.0) * sic_in.projector(j) - id);
        if (image.rows() != dout || image.cols() != dout) throw_input("pstoch_from_map: map output has wrong shape");
        for (int i = 0; i < sic_out.size(); ++i) s(i, j) = (sic_out.projector(i) * image).trace().real() / dout;
    }
    return s;
}

PtpMap parse_ptp(std::string_view name) {
    if (name == "transposition") return PtpMap::Transposition;
    if (name == "reduction") return PtpMap::Reduction;
    throw_input("unknown PTP map '" + std::string(name) + "' (expected transposition or reduction)");
}

PseudoStochMatrix builtin_ptp(PtpMap map, const SicPovm& sic) {
    const int d = sic.dim();
    std::function<ComplexMatrix(const ComplexMatrix&)> fn;
    if (map == PtpMap::Transposition)
        fn = [](const ComplexMatrix& x) { return ComplexMatrix(x.transpose()); };
    else
        fn = [d](const ComplexMatrix& x) { return ComplexMatrix(x.trace() * ComplexMatrix::Identity(d, d) - x); };
    PseudoStochMatrix s{d, d, pstoch_from_map(fn, sic, sic)};
    s.validate();
    return s;
}

namespace {

ComplexMatrix choi_from_r(const ComplexMatrix& r, int din, int dout) {
    ComplexMatrix rho(din * dout, din * dout);
    for (int i = 0; i < din; ++i)
        for (int a = 0; a < dout; ++a)
            for (int j = 0; j < din; ++j)
                for (int b = 0; b < dout; ++b) rho(i * dout + a, j * dout + b) = r(a * dout + b, i * din + j);
    return rho;
}

ComplexMatrix r_from_choi(const ComplexMatrix& rho, int din, int dout) {
    ComplexMatrix r(dout * dout, din * din);
    for (int i = 0; i < din; ++i)
        for (int a = 0; a < dout; ++a)
            for (int j = 0; j < din; ++j)
                for (int b = 0; b < dout; ++b) r(a * dout + b, i * din + j) = rho(i * dout + a, j * dout + b);
    return r;
}

ChoiMatrix choi_unchecked(const PseudoStochMatrix& s, const SicPovm& sic_in, const SicPovm& sic_out) {
    const ComplexMatrix r = sic_out.kmat() * s.matrix.cast<cplx>() * sic_in.kinv() / static_cast<double>(s.dim_in);
    return {s.dim_in, s.dim_out, choi_from_r(r, s.dim_in, s.dim_out)};
}

void require_shape(const PseudoStochMatrix& s, const SicPovm& sic_in, const SicPovm& sic_out, const char* what) {
    require_dims(sic_in, sic_out, s.dim_in, s.dim_out, what);
    if (s.matrix.rows() != sic_out.size() || s.matrix.cols() != sic_in.size()) {
        std::ostringstream os;
        os << what << ": matrix must be d_out^2 x d_in^2";
        throw_input(os.str());
    }
}

}  // namespace

ChoiMatrix pstoch_to_choi(const PseudoStochMatrix& s, const SicPovm& sic_in, const SicPovm& sic_out) {
    s.validate();
    require_shape(s, sic_in, sic_out, "pstoch_to_choi");
    return choi_unchecked(s, sic_in, sic_out);
}

PseudoStochMatrix choi_to_pstoch(const ChoiMatrix& choi, const SicPovm& sic_in, const SicPovm& sic_out) {
    require_dims(sic_in, sic_out, choi.dim_in, choi.dim_out, "choi_to_pstoch");
    const int n = choi.dim_in * choi.dim_out;
    if (choi.matrix.rows() != n || choi.matrix.cols() != n) throw_input("choi_to_pstoch: matrix must be d_in d_out square");
    const ComplexMatrix r = r_from_choi(choi.matrix, choi.dim_in, choi.dim_out);
    const ComplexMatrix s = static_cast<double>(choi.dim_in) * sic_out.kinv() * r * sic_in.kmat();
    PseudoStochMatrix out{choi.dim_in, choi.dim_out, numerics::checked_real(s, 1e-8, "choi_to_pstoch")};
    out.validate();
    return out;
}

KrausChannel choi_to_kraus(const ChoiMatrix& choi, double tol) {
    const int din = choi.dim_in;
    const int dout = choi.dim_out;
    if (choi.matrix.rows() != din * dout || choi.matrix.cols() != din * dout)
        throw_input("choi_to_kraus: matrix must be d_in d_out square");
    const auto eig = numerics::eig_hermitian(0.5 * (choi.matrix + choi.matrix.adjoint()), 1e-8);
    if (eig.values.minCoeff() < -tol) {
        std::ostringstream os;
        os << "choi_to_kraus: Choi matrix has negative eigenvalue " << eig.values.minCoeff();
        throw_physicality(os.str());
    }
    KrausChannel ch{din, dout, {}};
    for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
        if (eig.values(k) <= tol) continue;
        const double w = std::sqrt(din * eig.values(k));
        ComplexMatrix a(dout, din);
        for (int i = 0; i < din; ++i)
            for (int x = 0; x < dout; ++x) a(x, i) = w * eig.vectors(i * dout + x, k);
        ch.kraus.push_back(std::move(a));
    }
    if (ch.kraus.empty()) throw_physicality("choi_to_kraus: Choi matrix vanishes");
    return ch;
}

CptpReport is_cptp(const PseudoStochMatrix& s, const SicPovm& sic_in, const SicPovm& sic_out, double tol) {
    require_shape(s, sic_in, sic_out, "is_cptp");
    const ChoiMatrix choi = choi_unchecked(s, sic_in, sic_out);
    CptpReport rep;
    rep.tolerance = tol;
    rep.hermiticity_deviation = (choi.matrix - choi.matrix.adjoint()).cwiseAbs().maxCoeff();
    const ComplexMatrix herm = 0.5 * (choi.matrix + choi.matrix.adjoint());
    rep.min_eigenvalue = numerics::eig_hermitian(herm).values.minCoeff();

    const int din = s.dim_in;
    const int dout = s.dim_out;
    ComplexMatrix tr_out = ComplexMatrix::Zero(din, din);
    for (int i = 0; i < din; ++i)
        for (int j = 0; j < din; ++j)
            for (int a = 0; a < dout; ++a) tr_out(i, j) += choi.matrix(i * dout + a, j * dout + a);
    rep.tp_deviation =
        (tr_out - ComplexMatrix::Identity(din, din) / static_cast<double>(din)).cwiseAbs().maxCoeff();
    rep.cptp = rep.min_eigenvalue >= -tol && rep.tp_deviation <= tol && rep.hermiticity_deviation <= tol;
    return rep;
}

CptpProjection project_cptp(const RealMatrix& s_raw, const SicPovm& sic_in, const SicPovm& sic_out,
                            const OptConfig& opt) {
    const int d = sic_in.dim();
    if (sic_out.dim() != d) throw_input("project_cptp: input and output dimensions must agree");
    const int n = d * d;
    if (s_raw.rows() != n || s_raw.cols() != n) throw_input("project_cptp: raw matrix must be d^2 x d^2");
    if (!s_raw.allFinite()) throw_input("project_cptp: non-finite entry");
    opt.validate();

    const OperatorBasis basis = basis_sigma(d);
    opt::GramFitProblem prob;
    prob.n = n;
    prob.op.resize(n * n, n * n);
    prob.penalty_op.resize(d * d, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const ComplexMatrix theta =
                sic_out.kinv() * numerics::kron(basis[i], ComplexMatrix(basis[j].conjugate())) * sic_in.kmat();
            prob.op.col(i * n + j) = numerics::vec(theta);
            prob.penalty_op.col(i * n + j) = numerics::vec(ComplexMatrix(basis[j] * basis[i]));
        }
    prob.target = numerics::vec(ComplexMatrix(s_raw.cast<cplx>()));
    prob.penalty_target = numerics::vec(ComplexMatrix(ComplexMatrix::Identity(d, d)));

    constexpr std::array<double, 3> kPenalty{1e2, 1e4, 1e6};
    const opt::GramFitResult fit = opt::gram_fit(prob, opt, kPenalty);

    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < n; ++k) {
        ComplexMatrix a = ComplexMatrix::Zero(d, d);
        for (int i = 0; i < n; ++i) a += fit.v(i, k) * basis[i];
        kraus.push_back(std::move(a));
    }
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (const auto& a : kraus) x += a.adjoint() * a;
    const double tp_residual = (x - ComplexMatrix::Identity(d, d)).norm();
    const auto xeig = numerics::eig_hermitian(0.5 * (x + x.adjoint()), 1e-8);
    if (!(xeig.values.minCoeff() > 1e-8)) throw_optimizer("project_cptp: fitted Kraus set has a singular sum A^dagger A");
    const ComplexMatrix rescale = numerics::inverse_sqrt_hpd(0.5 * (x + x.adjoint()));

    CptpProjection out;
    out.kraus.dim_in = d;
    out.kraus.dim_out = d;
    const double scale = std::sqrt(x.trace().real() / d);
    for (auto& a : kraus) {
        if (a.norm() <= 1e-12 * std::max(1.0, scale)) continue;
        out.kraus.kraus.push_back(a * rescale);
    }
    out.s = kraus_to_pstoch(out.kraus, sic_in, sic_out);
    out.distance = (out.s.matrix - s_raw).norm();
    out.tp_residual = tp_residual;
    out.grad_norm = fit.grad_norm;
    out.restarts_converged = fit.restarts_converged;
    return out;
}

PseudoStochMatrix compose(const PseudoStochMatrix& s2, const PseudoStochMatrix& s1) {
    if (s2.dim_in != s1.dim_out || s2.matrix.cols() != s1.matrix.rows())
        throw_input("compose: inner dimensions do not match");
    PseudoStochMatrix out{s1.dim_in, s2.dim_out, s2.matrix * s1.matrix};
    return out;
}

ProbVector apply(const PseudoStochMatrix& s, const ProbVector& p) {
    if (p.dim != s.dim_in || p.probs.size() != s.matrix.cols()) throw_input("apply: vector dimension does not match");
    return {s.dim_out, s.matrix * p.probs};
}

}  // namespace sicrep

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

#include "sicrep/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "sicrep/error.hpp"
#include "sicrep/numerics.hpp"

namespace sicrep {

namespace {

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

void require_square(const RealMatrix& m, int n, const char* what) {
    if (m.rows() != n || m.cols() != n) {
        std::ostringstream os;
        os << what << ": expected a " << n << "x" << n << " matrix, got " << m.rows() << "x" << m.cols();
        throw_input(os.str());
    }
}

}  // namespace

UnitaryGenBasis basis_hunit(const SicPovm& sic) {
    const int d = sic.dim();
    const OperatorBasis sig = basis_sigma(d);
    UnitaryGenBasis b;
    b.dim = d;
    for (int i = 0; i + 1 < sig.size(); ++i) {
        const ComplexMatrix comm =
            numerics::kron(sig[i], identity(d)) - numerics::kron(identity(d), ComplexMatrix(sig[i].conjugate()));
        b.hmats.push_back(sic_frame(cplx(0.0, -1.0) * comm, sic, sic));
    }
    return b;
}

void Generator::validate(double tol) const {
    const int n = dim * dim;
    if (dim < 1) throw_input("Generator: dimension must be positive");
    require_square(matrix, n, "Generator");
    if (!matrix.allFinite()) throw_input("Generator: non-finite entry");
    const double dev = matrix.colwise().sum().cwiseAbs().maxCoeff();
    if (dev > tol) {
        std::ostringstream os;
        os << "Generator: column sums deviate from 0 by " << dev;
        throw_physicality(os.str());
    }
    if (h_part.has_value() != d_part.has_value()) throw_input("Generator: h_part and d_part must be given together");
    if (h_part) {
        require_square(*h_part, n, "Generator h_part");
        require_square(*d_part, n, "Generator d_part");
        const double pdev = (*h_part + *d_part - matrix).cwiseAbs().maxCoeff();
        if (pdev > std::max(tol, 1e-10)) throw_physicality("Generator: h_part + d_part does not equal matrix");
    }
}

void GkslSpec::validate(double tol) const {
    if (dim < 1) throw_input("GkslSpec: dimension must be positive");
    if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) throw_input("GkslSpec: Hamiltonian must be d x d");
    if (!hamiltonian.allFinite()) throw_input("GkslSpec: non-finite Hamiltonian entry");
    for (const auto& v : noise_ops) {
        if (v.rows() != dim || v.cols() != dim) throw_input("GkslSpec: noise operators must be d x d");
        if (!v.allFinite()) throw_input("GkslSpec: non-finite noise operator entry");
    }
    const double herm = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) throw_physicality("GkslSpec: Hamiltonian is not Hermitian");
}

ComplexMatrix GkslSpec::effective_hamiltonian() const {
    ComplexMatrix c = hamiltonian;
    for (const auto& v : noise_ops) c -= cplx(0.0, 0.5) * v.adjoint() * v;
    return c;
}

ComplexMatrix GkslSpec::superoperator() const {
    const ComplexMatrix c = effective_hamiltonian();
    ComplexMatrix lam = cplx(0.0, -1.0) * (numerics::kron(c, identity(dim)) -
                                           numerics::kron(identity(dim), ComplexMatrix(c.conjugate())));
    for (const auto& v : noise_ops) lam += numerics::kron(v, ComplexMatrix(v.conjugate()));
    return lam;
}

ComplexMatrix gksl_apply(const GkslSpec& spec, const ComplexMatrix& rho) {
    const cplx i1(0.0, 1.0);
    ComplexMatrix out = -i1 * (spec.hamiltonian * rho - rho * spec.hamiltonian);
    for (const auto& v : spec.noise_ops) {
        const ComplexMatrix vv = v.adjoint() * v;
        out += v * rho * v.adjoint() - 0.5 * (vv * rho + rho * vv);
    }
    return out;
}

Generator hgen_from_hamiltonian(const ComplexMatrix& h, const SicPovm& sic) {
    const int d = sic.dim();
    GkslSpec spec{d, h, {}};
    spec.validate();
    const ComplexMatrix comm =
        numerics::kron(h, identity(d)) - numerics::kron(identity(d), ComplexMatrix(h.conjugate()));
    Generator g{d, sic_frame(cplx(0.0, -1.0) * comm, sic, sic), std::nullopt, std::nullopt};
    return g;
}

Generator hgen_overlap_form(const ComplexMatrix& h, const SicPovm& sic) {
    const int d = sic.dim();
    GkslSpec spec{d, h, {}};
    spec.validate();
    const auto states = sic.states();
    const int n = sic.size();
    RealMatrix m(n, n);
    const double c = 2.0 * (d + 1.0) / d;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& pi = states[static_cast<std::size_t>(i)];
            const auto& pj = states[static_cast<std::size_t>(j)];
            m(i, j) = c * (pj.dot(pi) * pi.dot(h * pj)).imag();
        }
    return {d, m, std::nullopt, std::nullopt};
}

RealMatrix project_unit(const RealMatrix& m, const UnitaryGenBasis& basis) {
    const int n = basis.dim * basis.dim;
    require_square(m, n, "project_unit");
    RealMatrix out = RealMatrix::Zero(n, n);
    for (const auto& h : basis.hmats) out += ((h.transpose() * m).trace() / (4.0 * basis.dim)) * h;
    return out;
}

PseudoStochMatrix evolve_unitary(const Generator& g, double t, const UnitaryGenBasis& basis) {
    require_square(g.matrix, basis.dim * basis.dim, "evolve_unitary");
    const double dev = (project_unit(g.matrix, basis) - g.matrix).norm();
    if (dev > 1e-8) {
        std::ostringstream os;
        os << "evolve_unitary: generator is not in the unitary span (distance " << dev << ")";
        throw_input(os.str());
    }
    return evolve(g, t);
}

PseudoStochMatrix evolve(const Generator& g, double t) {
    require_square(g.matrix, g.dim * g.dim, "evolve");
    if (!std::isfinite(t)) throw_input("evolve: time must be finite");
    return {g.dim, g.dim, numerics::expm(RealMatrix(g.matrix * t))};
}

int default_time_steps(double t) { return std::max(1, static_cast<int>(std::ceil(1000.0 * std::abs(t)))); }

PseudoStochMatrix evolve_time_ordered(const std::function<RealMatrix(double)>& gen, int dim, double t, int steps) {
    if (steps < 1) throw_input("evolve_time_ordered: steps must be at least 1");
    if (!(t >= 0.0) || !std::isfinite(t)) throw_input("evolve_time_ordered: time must be finite and non-negative");
    const int n = dim * dim;
    RealMatrix u = RealMatrix::Identity(n, n);
    const double dt = t / steps;
    for (int k = 0; k < steps; ++k) {
        const RealMatrix l = gen((k + 0.5) * dt);
        require_square(l, n, "evolve_time_ordered");
        u = numerics::expm(RealMatrix(l * dt)) * u;
    }
    return {dim, dim, u};
}

Generator lgen_from_gksl(const GkslSpec& spec, const SicPovm& sic) {
    spec.validate();
    if (spec.dim != sic.dim()) throw_input("lgen_from_gksl: SIC dimension does not match");
    Generator g;
    g.dim = spec.dim;
    g.matrix = sic_frame(spec.superoperator(), sic, sic);
    RealMatrix h = hgen_from_hamiltonian(spec.hamiltonian, sic).matrix;
    g.d_part = g.matrix - h;
    g.h_part = std::move(h);
    return g;
}

RealMatrix kolmogorov_matrix(const GkslSpec& spec, const std::vector<ComplexVector>& basis_states) {
    spec.validate();
    const auto n = static_cast<Eigen::Index>(basis_states.size());
    if (n != spec.dim) throw_input("kolmogorov_matrix: need d basis states");
    for (const auto& e : basis_states)
        if (e.size() != spec.dim) throw_input("kolmogorov_matrix: basis state has wrong length");
    RealMatrix k(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& ej = basis_states[static_cast<std::size_t>(j)];
        const ComplexMatrix image = gksl_apply(spec, ej * ej.adjoint());
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& ei = basis_states[static_cast<std::size_t>(i)];
            k(i, j) = ei.dot(image * ei).real();
        }
    }
    return k;
}

OmegaBasis::OmegaBasis(const SicPovm& sic, const OperatorBasis& basis)
    : dim_(sic.dim()), n_(basis.size()), hunit_(basis_hunit(sic)) {
    if (basis.dim != dim_ || n_ != sic.size())
        throw_input("OmegaBasis: operator basis dimension does not match the SIC");
    const ComplexMatrix id = identity(dim_);
    for (int i = 0; i + 1 < n_; ++i)
        if (std::abs(basis[i].trace()) > 1e-12) throw_input("OmegaBasis: members before the last must be traceless");
    const cplx scale = basis[n_ - 1](0, 0);
    if ((basis[n_ - 1] - scale * id).norm() > 1e-12 || std::abs(scale) < 1e-12)
        throw_input("OmegaBasis: the last member must be proportional to the identity");
    omegas_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const ComplexMatrix si_c = basis[i].conjugate();
            const ComplexMatrix sj_c = basis[j].conjugate();
            const ComplexMatrix lam = numerics::kron(basis[i], sj_c) -
                                      0.5 * numerics::kron(ComplexMatrix(basis[j] * basis[i]), id) -
                                      0.5 * numerics::kron(id, ComplexMatrix(si_c * sj_c));
            omegas_.push_back(sic.kinv() * lam * sic.kmat());
        }
}

RealMatrix dgen_from_v(const ComplexMatrix& v, const OmegaBasis& omega) {
    const int n = omega.size();
    if (v.rows() != n || v.cols() != n) throw_input("dgen_from_v: V must be d^2 x d^2");
    const ComplexMatrix w = v * v.adjoint();
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += w(i, j) * omega(i, j);
    return numerics::checked_real(acc, 1e-8, "dgen_from_v");
}

MarkProjection project_mark(const RealMatrix& dtilde, const SicPovm& sic, const OptConfig& opt) {
    return project_mark(dtilde, OmegaBasis(sic, basis_sigma(sic.dim())), opt);
}

MarkProjection project_mark(const RealMatrix& dtilde, const OmegaBasis& omega, const OptConfig& opt) {
    const int n = omega.size();
    require_square(dtilde, n, "project_mark");
    if (!dtilde.allFinite()) throw_input("project_mark: non-finite entry");
    opt.validate();
    const UnitaryGenBasis& hunit = omega.unitary_basis();
    const auto remove_unit = [&](const ComplexMatrix& m) {
        ComplexMatrix out = m;
        for (int k = 0; k < hunit.size(); ++k) {
            const RealMatrix& h = hunit[k];
            out -= ((h.cast<cplx>().transpose() * m).trace() / (4.0 * omega.dim())) * h.cast<cplx>();
        }
        return out;
    };
    // traceless sector only, compared modulo the unitary span
    const int m = n - 1;
    opt::GramFitProblem prob;
    prob.n = m;
    prob.op.resize(n * n, m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) prob.op.col(i * m + j) = numerics::vec(remove_unit(omega(i, j)));
    prob.target = numerics::vec(remove_unit(dtilde.cast<cplx>()));
    const opt::GramFitResult fit = opt::gram_fit(prob, opt, {});
    MarkProjection out;
    out.v = ComplexMatrix::Zero(n, n);
    out.v.topLeftCorner(m, m) = fit.v;
    out.d_part = numerics::checked_real(remove_unit(dgen_from_v(out.v, omega).cast<cplx>()), 1e-8, "project_mark");
    out.residual = (out.d_part - dtilde).norm();
    out.grad_norm = fit.grad_norm;
    out.restarts_converged = fit.restarts_converged;
    return out;
}

MarkovianCheck is_time_independent_markovian(const Generator& g, const SicPovm& sic, double tol,
                                             const OptConfig& opt) {
    if (g.dim != sic.dim()) throw_input("is_time_independent_markovian: SIC dimension does not match");
    require_square(g.matrix, sic.size(), "is_time_independent_markovian");
    const RealMatrix h = project_unit(g.matrix, basis_hunit(sic));
    const MarkProjection mark = project_mark(RealMatrix(g.matrix - h), sic, opt);
    MarkovianCheck out;
    out.residual = (h + mark.d_part - g.matrix).norm();
    out.markovian = out.residual <= tol;
    return out;
}

}  // namespace sicrep

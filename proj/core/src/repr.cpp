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

#include "sicrep/repr.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sicrep/error.hpp"
#include "sicrep/numerics.hpp"

namespace sicrep {

namespace {

void require_dim(int got, int expected, const char* what) {
    if (got != expected) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << got << " vs " << expected << ")";
        throw_input(os.str());
    }
}

}  // namespace

void DensityMatrix::validate(double tol, double psd_tol) const {
    if (dim < 1 || matrix.rows() != dim || matrix.cols() != dim) throw_input("density matrix: shape does not match dim");
    if (!matrix.allFinite()) throw_input("density matrix: non-finite entries");
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) throw_physicality("density matrix: not Hermitian (deviation " + std::to_string(herm) + ")");
    const double tr = std::abs(matrix.trace() - 1.0);
    if (tr > tol) throw_physicality("density matrix: trace differs from 1 by " + std::to_string(tr));
    const double min_eig = numerics::eig_hermitian(matrix, 1.0).values(0);
    if (min_eig < -psd_tol) throw_physicality("density matrix: negative eigenvalue " + std::to_string(min_eig));
}

void ProbVector::validate(double tol) const {
    if (dim < 2 || probs.size() != dim * dim) throw_input("probability vector: length is not dim^2");
    if (!probs.allFinite()) throw_input("probability vector: non-finite entries");
    const double sum_dev = std::abs(probs.sum() - 1.0);
    if (sum_dev > tol) throw_physicality("probability vector: entries sum to " + std::to_string(probs.sum()));
    if (probs.minCoeff() < -1e-12) throw_physicality("probability vector: negative entry");
    if (probs.maxCoeff() > 1.0 / dim + 1e-9)
        throw_physicality("probability vector: entry exceeds 1/d, outside the qplex");
}

void PovmSet::validate(double tol) const {
    if (dim < 1 || effects.empty()) throw_input("POVM: needs at least one effect");
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (const auto& e : effects) {
        if (e.rows() != dim || e.cols() != dim) throw_input("POVM: effect has the wrong shape");
        if (!e.allFinite()) throw_input("POVM: non-finite entries");
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) throw_physicality("POVM: effect is not Hermitian");
        if (numerics::eig_hermitian(e, 1.0).values(0) < -tol) throw_physicality("POVM: effect is not positive");
        total += e;
    }
    if ((total - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol)
        throw_physicality("POVM: effects do not sum to the identity");
}

ProbVector state_to_prob(const DensityMatrix& rho, const SicPovm& sic) {
    require_dim(rho.dim, sic.dim(), "state_to_prob");
    rho.validate();
    const int d = sic.dim();
    ProbVector p{d, RealVector(sic.size())};
    for (int i = 0; i < sic.size(); ++i) p.probs(i) = (rho.matrix * sic.projector(i)).trace().real() / d;
    return p;
}

DensityMatrix prob_to_state(const ProbVector& p, const SicPovm& sic) {
    require_dim(p.dim, sic.dim(), "prob_to_state");
    if (p.probs.size() != sic.size()) throw_input("prob_to_state: probability vector has the wrong length");
    const int d = sic.dim();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < sic.size(); ++i) rho += ((d + 1.0) * p.probs(i) - 1.0 / d) * sic.projector(i);
    return {d, rho};
}

bool qplex_membership(const ProbVector& p, const SicPovm& sic, double tol) {
    const DensityMatrix rho = prob_to_state(p, sic);
    return numerics::eig_hermitian(rho.matrix, 1e-8).values(0) >= -tol;
}

double overlap(const ProbVector& p, const ProbVector& s, int dim) {
    require_dim(p.dim, dim, "overlap");
    require_dim(s.dim, dim, "overlap");
    if (p.probs.size() != s.probs.size() || p.probs.size() != dim * dim)
        throw_input("overlap: vectors have the wrong length");
    return dim * (dim + 1.0) * p.probs.dot(s.probs) - 1.0;
}

MeasurementMap measurement_map(const PovmSet& povm, const SicPovm& sic) {
    require_dim(povm.dim, sic.dim(), "measurement_map");
    povm.validate();
    const int d = sic.dim();
    const auto m = static_cast<Eigen::Index>(povm.effects.size());
    MeasurementMap out{RealMatrix(m, sic.size()), RealMatrix(m, sic.size())};
    for (Eigen::Index i = 0; i < m; ++i) {
        const double tr = povm.effects[i].trace().real();
        for (int j = 0; j < sic.size(); ++j) {
            out.mmat(i, j) = (povm.effects[i] * sic.projector(j)).trace().real();
            out.bigm(i, j) = (d + 1.0) * out.mmat(i, j) - tr;
        }
    }
    return out;
}

RealMatrix mub_forward_matrix() {
    const double a = 1.0 + std::numbers::sqrt3;
    const double b = 1.0 - std::numbers::sqrt3;
    RealMatrix f(3, 4);
    f << a, a, b, b,
         b, a, a, b,
         a, b, a, b;
    return 0.5 * f;
}

RealMatrix mub_inverse_matrix() {
    RealMatrix t(4, 3);
    t << 1, -1, 1,
         1, 1, -1,
         -1, 1, 1,
         -1, -1, -1;
    return std::numbers::sqrt3 / 6.0 * t;
}

RealVector mub_inverse_offset() {
    const double s3 = std::numbers::sqrt3;
    RealVector c(4);
    c << 3 - s3, 3 - s3, 3 - s3, 3 + 3 * s3;
    return c / 12.0;
}

Eigen::Vector3d mub_from_sic(const ProbVector& p) {
    if (p.dim != 2 || p.probs.size() != 4) throw_input("mub_from_sic: only defined for qubits");
    return mub_forward_matrix() * p.probs;
}

ProbVector sic_from_mub(const Eigen::Vector3d& ptilde) {
    if (!ptilde.allFinite() || ptilde.minCoeff() < 0.0 || ptilde.maxCoeff() > 1.0)
        throw_input("sic_from_mub: components must lie in [0, 1]");
    return {2, mub_inverse_matrix() * ptilde + mub_inverse_offset()};
}

}  // namespace sicrep

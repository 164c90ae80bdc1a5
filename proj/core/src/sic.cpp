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

#include "sicrep/sic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "sicrep/error.hpp"
#include "sicrep/numerics.hpp"

namespace sicrep {

namespace {

ComplexMatrix pauli(int k) {
    ComplexMatrix m(2, 2);
    const cplx i(0.0, 1.0);
    switch (k) {
        case 1: m << 0.0, 1.0, 1.0, 0.0; break;
        case 2: m << 0.0, -i, i, 0.0; break;
        case 3: m << 1.0, 0.0, 0.0, -1.0; break;
        default: m.setIdentity(); break;
    }
    return m;
}

ComplexVector leading_eigenvector(const ComplexMatrix& p) {
    const auto eig = numerics::eig_hermitian(p, 1e-6);
    return eig.vectors.col(eig.vectors.cols() - 1);
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex16(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string hash_values(const ComplexMatrix& values) {
    std::uint64_t h = 1469598103934665603ULL;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        for (double part : {values(k).real(), values(k).imag()}) {
            const long long q = std::llround(part * 1e12);
            h = fnv1a(h, std::to_string(q == 0 ? 0LL : q) + ";");
        }
    }
    return hex16(h);
}

}  // namespace

void Fiducial::validate(double tol) const {
    if (dim < 2) throw_input("fiducial: dimension must be at least 2");
    if (amplitudes.size() != dim) {
        std::ostringstream os;
        os << "fiducial: expected " << dim << " amplitudes, got " << amplitudes.size();
        throw_input(os.str());
    }
    if (!amplitudes.allFinite()) throw_input("fiducial: non-finite amplitude");
    const double norm_dev = std::abs(amplitudes.squaredNorm() - 1.0);
    if (norm_dev > tol) {
        std::ostringstream os;
        os << "fiducial: amplitudes not normalized (|sum |a|^2 - 1| = " << norm_dev << ")";
        throw_physicality(os.str());
    }
}

double SicReport::max_deviation() const {
    return std::max({gram_deviation, completeness_deviation, projector_deviation});
}

SicReport verify_projectors(int dim, std::span<const ComplexMatrix> projectors, double tol) {
    const auto n = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
    if (dim < 2 || projectors.size() != n) {
        std::ostringstream os;
        os << "verify: expected " << n << " projectors of dimension " << dim << ", got " << projectors.size();
        throw_input(os.str());
    }
    for (const auto& p : projectors)
        if (p.rows() != dim || p.cols() != dim) throw_input("verify: projector has the wrong shape");

    SicReport rep;
    rep.tolerance = tol;
    const double overlap = 1.0 / (dim + 1.0);
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexMatrix& p = projectors[i];
        total += p;
        const double herm = (p - p.adjoint()).cwiseAbs().maxCoeff();
        const double tr = std::abs(p.trace() - 1.0);
        const double idem = (p * p - p).cwiseAbs().maxCoeff();
        rep.projector_deviation = std::max({rep.projector_deviation, herm, tr, idem});
        for (std::size_t j = 0; j < n; ++j) {
            const double expected = i == j ? 1.0 : overlap;
            const double gram = std::abs((p * projectors[j]).trace() - expected);
            rep.gram_deviation = std::max(rep.gram_deviation, gram);
        }
    }
    rep.completeness_deviation =
        (total - static_cast<double>(dim) * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    rep.pass = rep.max_deviation() <= tol;
    return rep;
}

SicPovm::SicPovm(int dim, std::vector<ComplexMatrix> projectors, std::vector<ComplexVector> states, std::string label)
    : dim_(dim), projectors_(std::move(projectors)), states_(std::move(states)), label_(std::move(label)) {
    const int n = dim_ * dim_;
    const ComplexMatrix ident = ComplexMatrix::Identity(dim_, dim_);
    kmat_.resize(n, n);
    kinv_.resize(n, n);
    for (int i = 0; i < n; ++i) {
        kmat_.col(i) = numerics::vec((dim_ + 1.0) * projectors_[i] - ident);
        kinv_.row(i) = numerics::vec(projectors_[i]).adjoint() / static_cast<double>(dim_);
    }
    const ComplexMatrix id_n = ComplexMatrix::Identity(n, n);
    if ((kinv_ * kmat_ - id_n).cwiseAbs().maxCoeff() > 1e-10) {
        // The closed form is only an approximate inverse for an approximate SIC.
        Eigen::FullPivLU<ComplexMatrix> lu(kmat_);
        if (!lu.isInvertible()) throw_physicality("SicPovm: K matrix is singular; projectors are not a basis");
        kinv_ = lu.inverse();
        if ((kinv_ * kmat_ - id_n).cwiseAbs().maxCoeff() > 1e-10)
            throw_physicality("SicPovm: K matrix is numerically singular");
    }
}

SicPovm SicPovm::builtin_qubit() {
    constexpr int signs[4][3] = {{1, -1, 1}, {1, 1, -1}, {-1, 1, 1}, {-1, -1, -1}};
    const double inv_sqrt3 = 1.0 / std::numbers::sqrt3;
    std::vector<ComplexMatrix> projectors;
    std::vector<ComplexVector> states;
    for (const auto& s : signs) {
        ComplexMatrix p = pauli(0);
        for (int k = 0; k < 3; ++k) p += s[k] * inv_sqrt3 * pauli(k + 1);
        p *= 0.5;
        states.push_back(leading_eigenvector(p));
        projectors.push_back(std::move(p));
    }
    return SicPovm(2, std::move(projectors), std::move(states), "builtin-qubit");
}

SicPovm SicPovm::from_fiducial(const Fiducial& f, double tol) {
    f.validate();
    const int d = f.dim;
    std::vector<ComplexMatrix> projectors;
    std::vector<ComplexVector> states;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            ComplexVector psi = weyl_heisenberg(d, a, b) * f.amplitudes;
            projectors.push_back(psi * psi.adjoint());
            states.push_back(std::move(psi));
        }
    }
    const SicReport rep = verify_projectors(d, projectors, tol);
    if (!rep.pass) {
        std::ostringstream os;
        os << "from_fiducial: orbit is not a SIC (max deviation " << rep.max_deviation() << " > " << tol << ")";
        throw_physicality(os.str());
    }
    return SicPovm(d, std::move(projectors), std::move(states), "fiducial:" + fiducial_hash(f));
}

SicPovm SicPovm::from_projectors(int dim, std::vector<ComplexMatrix> projectors, double tol) {
    const SicReport rep = verify_projectors(dim, projectors, tol);
    if (!rep.pass) {
        std::ostringstream os;
        os << "from_projectors: not a SIC (max deviation " << rep.max_deviation() << " > " << tol << ")";
        throw_physicality(os.str());
    }
    std::vector<ComplexVector> states;
    ComplexMatrix all(dim, static_cast<Eigen::Index>(projectors.size()) * dim);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        states.push_back(leading_eigenvector(projectors[i]));
        all.middleCols(static_cast<Eigen::Index>(i) * dim, dim) = projectors[i];
    }
    return SicPovm(dim, std::move(projectors), std::move(states), "projectors:" + hash_values(all));
}

SicReport SicPovm::verify(double tol) const { return verify_projectors(dim_, projectors_, tol); }

ComplexMatrix weyl_heisenberg(int dim, int a, int b) {
    ComplexMatrix x = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix z = ComplexMatrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        x((j + 1) % dim, j) = 1.0;
        z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / dim);
    }
    ComplexMatrix out = ComplexMatrix::Identity(dim, dim);
    for (int k = 0; k < a; ++k) out = x * out;
    ComplexMatrix zb = ComplexMatrix::Identity(dim, dim);
    for (int k = 0; k < b; ++k) zb = z * zb;
    return out * zb;
}

std::string fiducial_hash(const Fiducial& f) { return hash_values(f.amplitudes); }

}  // namespace sicrep

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

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

// Reference computations written independently of the library: direct
// formulas, brute-force series and plain integrators.

namespace oracle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

/// Taylor series with scaling and squaring.
template <class M>
M taylor_expm(const M& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    while (norm / std::ldexp(1.0, s) > 0.05) ++s;
    const M x = a / std::ldexp(1.0, s);
    M term = M::Identity(a.rows(), a.cols());
    M sum = term;
    for (int k = 1; k < 30; ++k) {
        term = (term * x) / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

/// Born rule: p_i = Tr(rho Pi_i) / d.
inline VectorXd born(const MatrixXcd& rho, const std::vector<MatrixXcd>& projectors) {
    const double d = static_cast<double>(rho.rows());
    VectorXd p(static_cast<Eigen::Index>(projectors.size()));
    for (std::size_t i = 0; i < projectors.size(); ++i)
        p(static_cast<Eigen::Index>(i)) = (rho * projectors[i]).trace().real() / d;
    return p;
}

/// S_ij = (d_in + 1) s_ij - (1/d_out) Tr[Pi_i sum_k A_k A_k^dagger],
/// s_ij = (1/d_out) Tr[Pi_i Phi(Pi_j)].
inline MatrixXd pstoch_elementwise(const std::vector<MatrixXcd>& kraus, const std::vector<MatrixXcd>& pin,
                                   const std::vector<MatrixXcd>& pout) {
    const double din = static_cast<double>(pin.front().rows());
    const double dout = static_cast<double>(pout.front().rows());
    MatrixXcd aa = MatrixXcd::Zero(pout.front().rows(), pout.front().rows());
    for (const auto& a : kraus) aa += a * a.adjoint();
    MatrixXd s(pout.size(), pin.size());
    for (std::size_t j = 0; j < pin.size(); ++j) {
        MatrixXcd image = MatrixXcd::Zero(aa.rows(), aa.cols());
        for (const auto& a : kraus) image += a * pin[j] * a.adjoint();
        for (std::size_t i = 0; i < pout.size(); ++i) {
            const double sij = (pout[i] * image).trace().real() / dout;
            s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (din + 1.0) * sij - (pout[i] * aa).trace().real() / dout;
        }
    }
    return s;
}

/// Lindblad action written out term by term.
inline MatrixXcd lindblad(const MatrixXcd& h, const std::vector<MatrixXcd>& vs, const MatrixXcd& rho) {
    const cplx i(0.0, 1.0);
    MatrixXcd out = -i * (h * rho - rho * h);
    for (const auto& v : vs) {
        out += v * rho * v.adjoint();
        out -= 0.5 * (v.adjoint() * v * rho);
        out -= 0.5 * (rho * v.adjoint() * v);
    }
    return out;
}

/// L_ij = ((d+1)/d) Tr[Pi_i L(Pi_j)] - (1/d) Tr[Pi_i L(1)].
inline MatrixXd generator_elementwise(const MatrixXcd& h, const std::vector<MatrixXcd>& vs,
                                      const std::vector<MatrixXcd>& projectors) {
    const auto d = h.rows();
    const double dd = static_cast<double>(d);
    const MatrixXcd l_id = lindblad(h, vs, MatrixXcd::Identity(d, d));
    MatrixXd out(projectors.size(), projectors.size());
    for (std::size_t j = 0; j < projectors.size(); ++j) {
        const MatrixXcd lj = lindblad(h, vs, projectors[j]);
        for (std::size_t i = 0; i < projectors.size(); ++i)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (dd + 1.0) / dd * (projectors[i] * lj).trace().real() - (projectors[i] * l_id).trace().real() / dd;
    }
    return out;
}

/// Classical fourth-order Runge-Kutta for d rho/dt = L(rho).
inline MatrixXcd rk4(const MatrixXcd& h, const std::vector<MatrixXcd>& vs, MatrixXcd rho, double t, int steps) {
    const double dt = t / steps;
    for (int k = 0; k < steps; ++k) {
        const MatrixXcd k1 = lindblad(h, vs, rho);
        const MatrixXcd k2 = lindblad(h, vs, rho + 0.5 * dt * k1);
        const MatrixXcd k3 = lindblad(h, vs, rho + 0.5 * dt * k2);
        const MatrixXcd k4 = lindblad(h, vs, rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

/// rho_Phi = (1/d_in) sum_ij |i><j| (x) Phi(|i><j|), built from Kraus operators.
inline MatrixXcd choi_direct(const std::vector<MatrixXcd>& kraus) {
    const auto din = kraus.front().cols();
    const auto dout = kraus.front().rows();
    MatrixXcd rho = MatrixXcd::Zero(din * dout, din * dout);
    for (Eigen::Index i = 0; i < din; ++i)
        for (Eigen::Index j = 0; j < din; ++j) {
            MatrixXcd eij = MatrixXcd::Zero(din, din);
            eij(i, j) = 1.0;
            MatrixXcd image = MatrixXcd::Zero(dout, dout);
            for (const auto& a : kraus) image += a * eij * a.adjoint();
            rho.block(i * dout, j * dout, dout, dout) = image / static_cast<double>(din);
        }
    return rho;
}

inline MatrixXcd random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = cplx(n(rng), n(rng));
    return m;
}

inline MatrixXcd random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
    const MatrixXcd g = random_complex(d, d, rng);
    return 0.5 * (g + g.adjoint());
}

/// Ginibre-distributed density matrix.
inline MatrixXcd random_density(Eigen::Index d, std::mt19937_64& rng) {
    const MatrixXcd g = random_complex(d, d, rng);
    const MatrixXcd r = g * g.adjoint();
    return r / r.trace();
}

inline MatrixXcd random_pure(Eigen::Index d, std::mt19937_64& rng) {
    VectorXcd v = random_complex(d, 1, rng).col(0);
    v.normalize();
    return v * v.adjoint();
}

/// Kraus operators from the blocks of a random isometry (d x d blocks).
inline std::vector<MatrixXcd> random_kraus(Eigen::Index d, int count, std::mt19937_64& rng) {
    const MatrixXcd g = random_complex(d * count, d, rng);
    const Eigen::HouseholderQR<MatrixXcd> qr(g);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(d * count, d);
    std::vector<MatrixXcd> out;
    for (int k = 0; k < count; ++k) out.push_back(q.block(k * d, 0, d, d));
    return out;
}

inline MatrixXcd random_unitary(Eigen::Index d, std::mt19937_64& rng) {
    const Eigen::HouseholderQR<MatrixXcd> qr(random_complex(d, d, rng));
    return qr.householderQ() * MatrixXcd::Identity(d, d);
}

/// Random n x n real matrix with zero column sums and off-diagonals drawn
/// uniformly from [lo, hi].
inline MatrixXd random_generator(Eigen::Index n, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    MatrixXd l(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j) {
                l(i, j) = u(rng);
                sum += l(i, j);
            }
        l(j, j) = -sum;
    }
    return l;
}

}  // namespace oracle

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

#include "sicrep/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sicrep/error.hpp"

namespace sicrep::numerics {

namespace {

template <typename Mat>
void require_square_finite(const Mat& a, const char* what) {
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << what << ": matrix must be square, got " << a.rows() << "x" << a.cols();
        throw_input(os.str());
    }
    if (!a.allFinite()) throw_input(std::string(what) + ": matrix has non-finite entries");
}

// Padé coefficients and 1-norm thresholds from Higham, "The scaling and
// squaring method for the matrix exponential revisited" (2005).
constexpr std::array<double, 4> kPade3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kPade5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kPade7 = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
constexpr std::array<double, 10> kPade9 = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                           2162160., 110880., 3960., 90., 1.};
constexpr std::array<double, 14> kPade13 = {64764752532480000., 32382376266240000., 7771770303897600.,
                                            1187353796428800.,  129060195264000.,   10559470521600.,
                                            670442572800.,      33522128640.,       1323241920.,
                                            40840800.,          960960.,            16380.,
                                            182.,               1.};
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <typename Mat, std::size_t N>
Mat pade_low(const Mat& a, const std::array<double, N>& b) {
    const auto n = a.rows();
    const Mat ident = Mat::Identity(n, n);
    const Mat a2 = a * a;
    Mat power = ident;
    Mat u_inner = Mat::Zero(n, n);
    Mat v = Mat::Zero(n, n);
    for (std::size_t k = 0; k < N; k += 2) {
        v += b[k] * power;
        u_inner += b[k + 1] * power;
        power = power * a2;
    }
    const Mat u = a * u_inner;
    return (v - u).partialPivLu().solve(v + u);
}

template <typename Mat>
Mat expm_impl(const Mat& a_in) {
    require_square_finite(a_in, "expm");
    const auto n = a_in.rows();
    if (n == 0) return a_in;
    const double norm1 = a_in.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 <= kTheta3) return pade_low(a_in, kPade3);
    if (norm1 <= kTheta5) return pade_low(a_in, kPade5);
    if (norm1 <= kTheta7) return pade_low(a_in, kPade7);
    if (norm1 <= kTheta9) return pade_low(a_in, kPade9);

    int s = 0;
    if (norm1 > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    const Mat a = a_in / std::ldexp(1.0, s);
    const auto& b = kPade13;
    const Mat ident = Mat::Identity(n, n);
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;
    const Mat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < s; ++k) r = r * r;
    return r;
}

// Gauss-Legendre nodes/weights on [0, 1] via Newton iteration on P_m.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Quadrature gauss_legendre_unit(int m) {
    Quadrature q;
    q.nodes.resize(m);
    q.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        q.nodes[i] = 0.5 * (x + 1.0);
        q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // (2/((1-x^2)P'^2)) / 2
    }
    return q;
}

ComplexMatrix sqrtm_upper(const ComplexMatrix& t) {
    const auto n = t.rows();
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        r(j, j) = std::sqrt(t(j, j));
        for (Eigen::Index i = j - 1; i >= 0; --i) {
            cplx acc = t(i, j);
            for (Eigen::Index k = i + 1; k < j; ++k) acc -= r(i, k) * r(k, j);
            r(i, j) = acc / (r(i, i) + r(j, j));
        }
    }
    return r;
}

}  // namespace

RealMatrix expm(const RealMatrix& a) { return expm_impl(a); }
ComplexMatrix expm(const ComplexMatrix& a) { return expm_impl(a); }

ComplexMatrix logm(const ComplexMatrix& a) {
    require_square_finite(a, "logm");
    const auto n = a.rows();
    if (n == 0) return a;

    Eigen::ComplexSchur<ComplexMatrix> schur(a);
    if (schur.info() != Eigen::Success) throw_domain("logm: Schur decomposition failed");
    ComplexMatrix t = schur.matrixT();
    const ComplexMatrix& q = schur.matrixU();

    const double scale = std::max(1.0, max_abs(a));
    std::vector<cplx> offending;
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx lam = t(i, i);
        const double mag = std::abs(lam);
        const bool on_cut = std::abs(lam.imag()) <= 1e-10 * std::max(1.0, mag) && lam.real() <= 0.0;
        if (mag <= 1e-14 * scale || on_cut) offending.push_back(lam);
    }
    if (!offending.empty()) {
        std::ostringstream os;
        os << "logm: no principal logarithm, eigenvalue(s) on the closed negative real axis:";
        for (const auto& lam : offending) os << " (" << lam.real() << "," << lam.imag() << ")";
        throw_domain(os.str());
    }

    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    int squarings = 0;
    constexpr int kMaxRoots = 100;
    while ((t - ident).cwiseAbs().colwise().sum().maxCoeff() > 0.25) {
        if (++squarings > kMaxRoots) throw_domain("logm: square-root reduction did not converge");
        t = sqrtm_upper(t);
    }

    static const Quadrature quad = gauss_legendre_unit(8);
    const ComplexMatrix x = t - ident;
    ComplexMatrix log_t = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
        const ComplexMatrix denom = ident + quad.nodes[k] * x;
        log_t += quad.weights[k] * denom.triangularView<Eigen::Upper>().solve(x);
    }
    log_t *= std::ldexp(1.0, squarings);
    return q * log_t * q.adjoint();
}

RealMatrix logm_real(const RealMatrix& a, double tol_imag) {
    require_square_finite(a, "logm_real");
    const ComplexMatrix l = logm(a.cast<cplx>());
    const double imag = l.imag().cwiseAbs().maxCoeff();
    if (imag > tol_imag) {
        std::ostringstream os;
        os << "logm_real: principal logarithm is not real (max imaginary part " << imag << " > " << tol_imag << ")";
        throw_domain(os.str());
    }
    return l.real();
}

HermitianEigen eig_hermitian(const ComplexMatrix& a, double herm_tol) {
    require_square_finite(a, "eig_hermitian");
    const double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (dev > herm_tol * std::max(1.0, max_abs(a))) {
        std::ostringstream os;
        os << "eig_hermitian: matrix is not Hermitian (deviation " << dev << ")";
        throw_input(os.str());
    }
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) throw_domain("eig_hermitian: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

double frobenius_dist(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << "frobenius_dist: shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
           << b.cols();
        throw_input(os.str());
    }
    const RealMatrix diff = a - b;
    return (diff.transpose() * diff).trace();
}

template <typename Mat>
static Mat kron_impl(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kron_impl(a, b); }
RealMatrix kron(const RealMatrix& a, const RealMatrix& b) { return kron_impl(a, b); }

ComplexVector vec(const ComplexMatrix& a) {
    ComplexVector v(a.size());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
    return v;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw_input("unvec: length does not match the requested shape");
    ComplexMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
    return a;
}

double condition_number(const RealMatrix& a) {
    if (a.size() == 0) return 1.0;
    Eigen::JacobiSVD<RealMatrix> svd(a);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

RealMatrix solve(const RealMatrix& a, const RealMatrix& b, double max_cond) {
    require_square_finite(a, "solve");
    if (b.rows() != a.rows()) throw_input("solve: right-hand side has the wrong number of rows");
    const double cond = condition_number(a);
    if (!(cond <= max_cond)) {
        std::ostringstream os;
        os << "solve: matrix is numerically singular (condition number " << cond << ")";
        throw_domain(os.str());
    }
    return a.colPivHouseholderQr().solve(b);
}

ComplexMatrix inverse_sqrt_hpd(const ComplexMatrix& a) {
    const HermitianEigen eig = eig_hermitian(a, 1e-8);
    if (eig.values.size() > 0 && eig.values(0) <= 0.0) throw_domain("inverse_sqrt_hpd: matrix is not positive definite");
    const RealVector inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
    return eig.vectors * inv_sqrt.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

RealMatrix checked_real(const ComplexMatrix& a, double tol, const char* what) {
    const double imag = a.size() ? a.imag().cwiseAbs().maxCoeff() : 0.0;
    if (!(imag <= tol)) {
        std::ostringstream os;
        os << what << ": imaginary residual " << imag << " exceeds " << tol;
        throw_domain(os.str());
    }
    return a.real();
}

bool all_finite(const RealMatrix& a) { return a.allFinite(); }
bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

double max_abs(const RealMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }
double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace sicrep::numerics

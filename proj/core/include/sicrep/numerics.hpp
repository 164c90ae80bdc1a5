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

#include "sicrep/types.hpp"

// Dense matrix kernels shared by every other part of the library. All
// functions are pure and thread-safe.

namespace sicrep::numerics {

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant (degree 3..13, picked from the 1-norm).
/// Throws Error(Input) on a non-square or non-finite argument.
RealMatrix expm(const RealMatrix& a);
ComplexMatrix expm(const ComplexMatrix& a);

/// Principal logarithm. The argument is reduced to complex Schur form, square
/// roots are taken until the triangular factor is close to the identity, and
/// log(I + X) is evaluated with Gauss-Legendre quadrature (a Padé
/// approximant in partial-fraction form).
/// Throws Error(Domain) if an eigenvalue lies on the closed negative real axis.
ComplexMatrix logm(const ComplexMatrix& a);

/// Real principal logarithm. Throws Error(Domain) when the principal log has
/// an imaginary part larger than `tol_imag` (max abs entry).
RealMatrix logm_real(const RealMatrix& a, double tol_imag = 1e-8);

struct HermitianEigen {
    RealVector values;     ///< ascending
    ComplexMatrix vectors; ///< orthonormal columns
};

/// Throws Error(Input) if `a` is not Hermitian within `herm_tol` (relative to
/// max(1, |a|_max)).
HermitianEigen eig_hermitian(const ComplexMatrix& a, double herm_tol = 1e-10);

/// Tr[(A-B)^T (A-B)], the squared Frobenius distance.
double frobenius_dist(const RealMatrix& a, const RealMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// Row-major vectorization: |A>> = sum_ij A_ij |i>|j>.
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

/// Solves A X = B with column-pivoted QR. Throws Error(Domain) when A is
/// numerically singular (2-norm condition number above `max_cond`).
RealMatrix solve(const RealMatrix& a, const RealMatrix& b, double max_cond = 1e12);

/// 2-norm condition number (ratio of extreme singular values).
double condition_number(const RealMatrix& a);

/// A^{-1/2} for Hermitian positive definite A.
ComplexMatrix inverse_sqrt_hpd(const ComplexMatrix& a);

/// Real part of `a`. Throws Error(Domain) naming `what` if any imaginary
/// part exceeds `tol` in absolute value.
RealMatrix checked_real(const ComplexMatrix& a, double tol, const char* what);

bool all_finite(const RealMatrix& a);
bool all_finite(const ComplexMatrix& a);

double max_abs(const RealMatrix& a);
double max_abs(const ComplexMatrix& a);

}  // namespace sicrep::numerics

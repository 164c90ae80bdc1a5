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
#include <numbers>

#include <Eigen/Dense>

// Reference qubit matrices used as regression fixtures.

namespace fixtures {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using cplx = std::complex<double>;

inline MatrixXcd k_matrix() {
    const double s = std::sqrt(3.0);
    const cplx i(0.0, 1.0);
    MatrixXcd k(4, 4);
    k << 1 + s, 1 - s, 1 + s, 1 - s,
         s + i * s, s - i * s, -s - i * s, -s + i * s,
         s - i * s, s + i * s, -s + i * s, -s - i * s,
         1 - s, 1 + s, 1 - s, 1 + s;
    return k / 2.0;
}

inline MatrixXcd k_inverse_reference() {
    const double s = std::sqrt(3.0);
    const cplx i(0.0, 1.0);
    MatrixXcd k(4, 4);
    k << 1 + s, 1 - s, 1 + s, 1 - s,
         s + i * s, s - i * s, -s - i * s, -s + i * s,
         s - i * s, s + i * s, -s + i * s, -s - i * s,
         1 - s, 1 + s, 1 - s, 1 + s;
    return k / 12.0;
}

inline MatrixXd h1() {
    MatrixXd m(4, 4);
    m << 0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, 1, -1, 0, 0;
    return m;
}

inline MatrixXd h2() {
    MatrixXd m(4, 4);
    m << 0, -1, 1, 0, 1, 0, 0, -1, -1, 0, 0, 1, 0, 1, -1, 0;
    return m;
}

inline MatrixXd h3() {
    MatrixXd m(4, 4);
    m << 0, -1, 0, 1, 1, 0, -1, 0, 0, 1, 0, -1, -1, 0, 1, 0;
    return m;
}

inline MatrixXd u_closed_form(double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    MatrixXd m(4, 4);
    m << 1 + c, -s, 1 - c, s,
         s, 1 + c, -s, 1 - c,
         1 - c, s, 1 + c, -s,
         -s, 1 - c, s, 1 + c;
    return m / 2.0;
}

inline MatrixXd s_transposition() {
    MatrixXd m(4, 4);
    m << 1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, 1;
    return m / 2.0;
}

inline MatrixXd s_reduction() {
    MatrixXd m(4, 4);
    m << -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1;
    return m / 2.0;
}

inline MatrixXd s_gate_ideal() {
    MatrixXd m(4, 4);
    m << 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1, -1, 1, 1, 1;
    return m / 2.0;
}

inline MatrixXd s_u_table() {
    MatrixXd m(4, 4);
    m << 0.517, -0.399, 0.478, 0.489,
         0.449, 0.504, -0.418, 0.473,
         0.502, 0.403, 0.466, -0.448,
         -0.467, 0.493, 0.475, 0.487;
    return m;
}

inline MatrixXd s_dec_table() {
    MatrixXd m(4, 4);
    m << 0.893, 0.002, 0.100, 0.010,
         0.018, 0.877, 0.012, 0.071,
         0.102, 0.018, 0.924, 0.058,
         0.014, 0.111, -0.002, 0.874;
    return m;
}

inline MatrixXd h_u_table() {
    MatrixXd m(4, 4);
    m << 0, -0.768, -0.033, 0.801,
         0.768, 0, -0.761, -0.007,
         0.033, 0.761, 0, -0.794,
         -0.801, 0.007, 0.794, 0;
    return m;
}

inline MatrixXd h_dec_table() {
    MatrixXd m(4, 4);
    m << 0, -0.010, 0.012, -0.002,
         0.010, 0, 0.011, -0.021,
         -0.012, -0.011, 0, 0.023,
         0.002, 0.021, -0.023, 0;
    return m;
}

inline MatrixXd d_u_table() {
    MatrixXd m(4, 4);
    m << -0.044, 0.046, 0.070, 0.001,
         0.013, -0.105, 0.005, 0.030,
         0.033, 0.001, -0.110, 0.003,
         -0.004, 0.058, 0.035, -0.034;
    return m;
}

inline MatrixXd d_dec_table() {
    MatrixXd m(4, 4);
    m << -0.131, 0.008, 0.089, 0.007,
         0.007, -0.136, -0.001, 0.098,
         0.113, 0.025, -0.102, 0.035,
         0.011, 0.103, 0.014, -0.139;
    return m;
}

inline MatrixXd p_matrix() {
    MatrixXd m(4, 4);
    m << 3, 1, 1, 1, 1, 3, 1, 1, 1, 1, 3, 1, 1, 1, 1, 3;
    return m / 6.0;
}

inline MatrixXd p_inverse() {
    MatrixXd m(4, 4);
    m << 5, -1, -1, -1, -1, 5, -1, -1, -1, -1, 5, -1, -1, -1, -1, 5;
    return m / 2.0;
}

inline MatrixXd mub_f() {
    const double s = std::sqrt(3.0);
    MatrixXd m(3, 4);
    m << 1 + s, 1 + s, 1 - s, 1 - s,
         1 - s, 1 + s, 1 + s, 1 - s,
         1 + s, 1 - s, 1 + s, 1 - s;
    return m / 2.0;
}

inline MatrixXd mub_t() {
    MatrixXd m(4, 3);
    m << 1, -1, 1, 1, 1, -1, -1, 1, 1, -1, -1, -1;
    return m * std::sqrt(3.0) / 6.0;
}

inline Eigen::VectorXd mub_c() {
    const double s = std::sqrt(3.0);
    Eigen::VectorXd c(4);
    c << 3 - s, 3 - s, 3 - s, 3 + 3 * s;
    return c / 12.0;
}

}  // namespace fixtures

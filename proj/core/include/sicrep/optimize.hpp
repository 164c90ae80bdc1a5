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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sicrep/types.hpp"

namespace sicrep {

/// Multi-start optimizer settings. Every run is deterministic given `seed`.
struct OptConfig {
    int restarts = 8;
    int max_iter = 3000;
    double grad_tol = 1e-9;
    std::uint64_t seed = 1;
    bool parallel = false;  ///< run restarts on separate threads

    void validate() const;

    /// Settings used for the derivative-free nonclassicality search.
    static OptConfig simplex_defaults();
};

namespace opt {

/// Objective returning f(x); writes the gradient when `grad` is non-null.
using GradObjective = std::function<double(const RealVector& x, RealVector* grad)>;
using Objective = std::function<double(const RealVector& x)>;

struct LocalResult {
    RealVector x;
    double value = 0.0;
    double grad_norm = 0.0;  ///< infinity norm at x (NaN for derivative-free runs)
    int iterations = 0;
    bool converged = false;
};

/// Dense BFGS with a strong-Wolfe line search.
LocalResult bfgs(const GradObjective& f, RealVector x0, int max_iter, double grad_tol);

/// Nelder-Mead simplex. Stops when the simplex diameter drops below `x_tol`
/// and the spread of vertex values below `f_tol`.
LocalResult nelder_mead(const Objective& f, RealVector x0, double initial_step, int max_iter, double x_tol = 1e-10,
                        double f_tol = 1e-12);

/// Compass search along coordinate axes with a halving step.
LocalResult coordinate_polish(const Objective& f, RealVector x0, double step, double min_step, int max_iter = 10000);

/// Portable deterministic stream (splitmix64) with uniform and normal draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();  ///< [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

private:
    std::uint64_t state_;
};

/// Least squares over positive semidefinite coefficient matrices,
///
///   minimize |A w - t|^2 + mu |B w - u|^2,   w = vec(V V^dagger) (row-major),
///
/// over complex n x n matrices V. The factorized parametrization keeps
/// V V^dagger positive semidefinite without constraints.
struct GramFitProblem {
    int n = 0;
    ComplexMatrix op;              ///< A, rows x n^2
    ComplexVector target;          ///< t
    ComplexMatrix penalty_op;      ///< B (may be empty)
    ComplexVector penalty_target;  ///< u
};

struct GramFitResult {
    ComplexMatrix v;
    ComplexMatrix w;  ///< V V^dagger
    double objective = 0.0;
    double residual = 0.0;          ///< |A w - t|
    double penalty_residual = 0.0;  ///< |B w - u|
    double grad_norm = 0.0;
    int best_restart = 0;
    int restarts_converged = 0;
};

/// Value and gradient of the objective at V for a fixed penalty weight.
/// The gradient g satisfies df = Re sum conj(g_ij) dV_ij.
double gram_fit_objective(const GramFitProblem& prob, const ComplexMatrix& v, double mu, ComplexMatrix* grad);

/// Multi-start solve. Restart 0 starts from the eigen-clipped least-squares
/// fit; the others perturb it or start at random. The penalty weight runs
/// through `penalty_weights` in order, warm-starting each stage.
/// Throws Error(Optimizer) if no restart reaches a stationary point.
GramFitResult gram_fit(const GramFitProblem& prob, const OptConfig& cfg, std::span<const double> penalty_weights);

/// Least-squares W (Hermitian part), its PSD clip, and the factor V with V V^dagger = clip.
ComplexMatrix gram_fit_warm_start(const GramFitProblem& prob, double mu);

}  // namespace opt
}  // namespace sicrep

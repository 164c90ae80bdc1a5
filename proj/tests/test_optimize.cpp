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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sicrep/error.hpp"
#include "sicrep/optimize.hpp"

using namespace sicrep;

namespace {

double rosenbrock(const RealVector& x, RealVector* g) {
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    if (g) {
        g->resize(2);
        (*g)(0) = -2.0 * a - 400.0 * x(0) * b;
        (*g)(1) = 200.0 * b;
    }
    return a * a + 100.0 * b * b;
}

// Planted problem: A is a random complex map, t = A vec(W0) for a PSD W0.
opt::GramFitProblem planted(int n, int rank, std::mt19937_64& rng, ComplexMatrix* w0) {
    const ComplexMatrix v0 = oracle::random_complex(n, rank, rng);
    *w0 = v0 * v0.adjoint();
    opt::GramFitProblem prob;
    prob.n = n;
    prob.op = oracle::random_complex(2 * n * n, n * n, rng);
    ComplexVector wv(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) wv(i * n + j) = (*w0)(i, j);
    prob.target = prob.op * wv;
    return prob;
}

}  // namespace

TEST(Bfgs, Rosenbrock) {
    RealVector x0(2);
    x0 << -1.2, 1.0;
    const opt::LocalResult r = opt::bfgs(rosenbrock, x0, 500, 1e-10);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x(0), 1.0, 1e-8);
    EXPECT_NEAR(r.x(1), 1.0, 1e-8);
    EXPECT_LE(r.grad_norm, 1e-10);
}

TEST(Bfgs, QuadraticInFewSteps) {
    std::mt19937_64 rng(81);
    const RealMatrix g = oracle::random_complex(6, 6, rng).real();
    const RealMatrix a = g * g.transpose() + RealMatrix::Identity(6, 6);
    const RealVector b = RealVector::Ones(6);
    const auto f = [&](const RealVector& x, RealVector* grad) {
        if (grad) *grad = a * x - b;
        return 0.5 * x.dot(a * x) - b.dot(x);
    };
    const opt::LocalResult r = opt::bfgs(f, RealVector::Zero(6), 100, 1e-9);
    EXPECT_TRUE(r.converged);
    EXPECT_LT((r.x - a.ldlt().solve(b)).norm(), 1e-8);
    EXPECT_LE(r.iterations, 30);
}

TEST(NelderMead, RosenbrockWithoutGradients) {
    RealVector x0(2);
    x0 << -1.2, 1.0;
    const opt::LocalResult r =
        opt::nelder_mead([](const RealVector& x) { return rosenbrock(x, nullptr); }, x0, 0.5, 5000, 1e-12, 1e-16);
    EXPECT_NEAR(r.x(0), 1.0, 1e-5);
    EXPECT_NEAR(r.x(1), 1.0, 1e-5);
}

TEST(CoordinatePolish, ReachesNonsmoothMinimum) {
    const auto f = [](const RealVector& x) { return std::abs(x(0) - 0.3) + 2.0 * std::abs(x(1) + 0.7); };
    const opt::LocalResult r = opt::coordinate_polish(f, RealVector::Zero(2), 0.5, 1e-10);
    EXPECT_NEAR(r.x(0), 0.3, 1e-9);
    EXPECT_NEAR(r.x(1), -0.7, 1e-9);
    EXPECT_LT(r.value, 1e-8);
}

TEST(Rng, DeterministicAndWellSpread) {
    opt::Rng a(5);
    opt::Rng b(5);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
    opt::Rng r(42);
    double mean = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double z = r.normal();
        mean += z;
        sq += z * z;
    }
    EXPECT_NEAR(mean / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(GramFit, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(82);
    ComplexMatrix w0;
    opt::GramFitProblem prob = planted(3, 2, rng, &w0);
    prob.penalty_op = oracle::random_complex(4, 9, rng);
    prob.penalty_target = oracle::random_complex(4, 1, rng).col(0);
    const ComplexMatrix v = oracle::random_complex(3, 3, rng);
    ComplexMatrix g;
    opt::gram_fit_objective(prob, v, 10.0, &g);
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (const cplx dir : {cplx(1, 0), cplx(0, 1)}) {
                ComplexMatrix vp = v, vm = v;
                vp(i, j) += h * dir;
                vm(i, j) -= h * dir;
                const double fd = (opt::gram_fit_objective(prob, vp, 10.0, nullptr) -
                                   opt::gram_fit_objective(prob, vm, 10.0, nullptr)) /
                                  (2 * h);
                const double analytic = (std::conj(g(i, j)) * dir).real();
                EXPECT_NEAR(fd, analytic, 1e-5 * std::max(1.0, std::abs(analytic)));
            }
}

TEST(GramFit, RecoversPlantedPsdMatrix) {
    std::mt19937_64 rng(83);
    ComplexMatrix w0;
    const opt::GramFitProblem prob = planted(3, 1, rng, &w0);
    OptConfig cfg;
    cfg.restarts = 4;
    const opt::GramFitResult r = opt::gram_fit(prob, cfg, {});
    EXPECT_LT((r.w - w0).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LT(r.residual, 1e-6);
    EXPECT_GE(r.restarts_converged, 1);
}

TEST(GramFit, WarmStartIsPositiveSemidefinite) {
    std::mt19937_64 rng(84);
    ComplexMatrix w0;
    const opt::GramFitProblem prob = planted(4, 2, rng, &w0);
    const ComplexMatrix v = opt::gram_fit_warm_start(prob, 0.0);
    const ComplexMatrix w = v * v.adjoint();
    EXPECT_LT((w - w0).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(GramFit, DeterministicForSeed) {
    std::mt19937_64 rng(85);
    ComplexMatrix w0;
    opt::GramFitProblem prob = planted(3, 3, rng, &w0);
    prob.target += 0.1 * oracle::random_complex(prob.target.size(), 1, rng).col(0);
    OptConfig cfg;
    cfg.restarts = 3;
    cfg.seed = 17;
    const opt::GramFitResult a = opt::gram_fit(prob, cfg, {});
    const opt::GramFitResult b = opt::gram_fit(prob, cfg, {});
    EXPECT_EQ(a.v, b.v);
    cfg.parallel = true;
    const opt::GramFitResult c = opt::gram_fit(prob, cfg, {});
    EXPECT_EQ(a.v, c.v);
}

TEST(OptConfig, Validation) {
    OptConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.restarts = 0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = OptConfig{};
    cfg.grad_tol = 0.0;
    EXPECT_THROW(cfg.validate(), Error);
    EXPECT_EQ(OptConfig::simplex_defaults().restarts, 32);
}

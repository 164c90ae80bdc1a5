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

#include "sicrep/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "sicrep/error.hpp"
#include "sicrep/numerics.hpp"

namespace sicrep {

void OptConfig::validate() const {
    if (restarts < 1) throw_input("OptConfig: restarts must be at least 1");
    if (max_iter < 1) throw_input("OptConfig: max_iter must be at least 1");
    if (!(grad_tol > 0.0)) throw_input("OptConfig: grad_tol must be positive");
}

OptConfig OptConfig::simplex_defaults() {
    OptConfig cfg;
    cfg.restarts = 32;
    cfg.max_iter = 4000;
    cfg.grad_tol = 1e-10;
    return cfg;
}

namespace opt {

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

struct Point {
    RealVector x;
    double f = 0.0;
    RealVector g;
};

struct LineSearch {
    const GradObjective& fn;
    const Point& start;
    const RealVector& dir;
    double dphi0;
    int evals = 0;

    Point eval(double alpha) {
        Point p;
        p.x = start.x + alpha * dir;
        p.g.resize(p.x.size());
        p.f = fn(p.x, &p.g);
        ++evals;
        return p;
    }
};

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.9;

bool zoom(LineSearch& ls, double lo, Point p_lo, double hi, Point p_hi, Point& out) {
    const double f0 = ls.start.f;
    for (int it = 0; it < 40; ++it) {
        // Quadratic interpolation using phi(lo), phi'(lo), phi(hi), safeguarded.
        const double dlo = p_lo.g.dot(ls.dir);
        const double span = hi - lo;
        double a = lo + 0.5 * span;
        const double denom = 2.0 * (p_hi.f - p_lo.f - dlo * span);
        if (denom > 0.0) {
            const double cand = lo - dlo * span * span / denom;
            const double left = std::min(lo, hi) + 0.1 * std::abs(span);
            const double right = std::max(lo, hi) - 0.1 * std::abs(span);
            if (std::isfinite(cand) && cand >= left && cand <= right) a = cand;
        }
        Point p = ls.eval(a);
        if (!std::isfinite(p.f) || p.f > f0 + kC1 * a * ls.dphi0 || p.f >= p_lo.f) {
            hi = a;
            p_hi = std::move(p);
        } else {
            const double da = p.g.dot(ls.dir);
            if (std::abs(da) <= -kC2 * ls.dphi0) {
                out = std::move(p);
                return true;
            }
            if (da * (hi - lo) >= 0.0) {
                hi = lo;
                p_hi = p_lo;
            }
            lo = a;
            p_lo = std::move(p);
        }
        if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    // Accept the best sufficient-decrease point found.
    if (p_lo.f < f0 && lo > 0.0) {
        out = std::move(p_lo);
        return true;
    }
    return false;
}

bool strong_wolfe(const GradObjective& fn, const Point& start, const RealVector& dir, double alpha0, Point& out) {
    LineSearch ls{fn, start, dir, start.g.dot(dir)};
    double prev_alpha = 0.0;
    Point prev = start;
    double alpha = alpha0;
    for (int i = 0; i < 30; ++i) {
        Point p = ls.eval(alpha);
        if (!std::isfinite(p.f) || p.f > start.f + kC1 * alpha * ls.dphi0 || (i > 0 && p.f >= prev.f))
            return zoom(ls, prev_alpha, prev, alpha, p, out);
        const double da = p.g.dot(dir);
        if (std::abs(da) <= -kC2 * ls.dphi0) {
            out = std::move(p);
            return true;
        }
        if (da >= 0.0) return zoom(ls, alpha, p, prev_alpha, prev, out);
        prev_alpha = alpha;
        prev = std::move(p);
        alpha *= 2.0;
    }
    out = std::move(prev);
    return out.f < start.f;
}

}  // namespace

LocalResult bfgs(const GradObjective& f, RealVector x0, int max_iter, double grad_tol) {
    const auto n = x0.size();
    Point cur;
    cur.x = std::move(x0);
    cur.g.resize(n);
    cur.f = f(cur.x, &cur.g);
    if (!std::isfinite(cur.f)) throw_optimizer("bfgs: objective is not finite at the starting point");

    RealMatrix hinv = RealMatrix::Identity(n, n);
    bool scaled = false;
    int stalls = 0;
    LocalResult res;
    int it = 0;
    for (; it < max_iter; ++it) {
        if (cur.g.lpNorm<Eigen::Infinity>() <= grad_tol) break;
        RealVector dir = -hinv * cur.g;
        if (dir.dot(cur.g) >= 0.0) {
            hinv.setIdentity();
            dir = -cur.g;
        }
        const double alpha0 = scaled ? 1.0 : std::min(1.0, 1.0 / std::max(1e-300, cur.g.lpNorm<Eigen::Infinity>()));
        Point next;
        if (!strong_wolfe(f, cur, dir, alpha0, next)) {
            if (!hinv.isIdentity()) {
                hinv.setIdentity();
                scaled = false;
                continue;
            }
            break;
        }
        const RealVector s = next.x - cur.x;
        const RealVector y = next.g - cur.g;
        const double sy = s.dot(y);
        if (sy > 1e-14 * s.norm() * y.norm()) {
            if (!scaled) {
                hinv *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const RealVector hy = hinv * y;
            const double yhy = y.dot(hy);
            hinv += ((1.0 + rho * yhy) * rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }
        const double df = cur.f - next.f;
        stalls = df <= 1e-15 * std::max(1.0, std::abs(cur.f)) ? stalls + 1 : 0;
        cur = std::move(next);
        if (stalls >= 20) break;
    }
    res.x = std::move(cur.x);
    res.value = cur.f;
    res.grad_norm = cur.g.lpNorm<Eigen::Infinity>();
    res.iterations = it;
    res.converged = res.grad_norm <= grad_tol;
    return res;
}

LocalResult nelder_mead(const Objective& f, RealVector x0, double initial_step, int max_iter, double x_tol,
                        double f_tol) {
    const auto n = x0.size();
    std::vector<RealVector> simplex(static_cast<std::size_t>(n) + 1, x0);
    std::vector<double> values(simplex.size());
    for (Eigen::Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i) + 1](i) += initial_step;
    for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = f(simplex[i]);

    std::vector<std::size_t> order(simplex.size());
    LocalResult res;
    int it = 0;
    for (; it < max_iter; ++it) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        double diameter = 0.0;
        for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[best]).lpNorm<Eigen::Infinity>());
        if (diameter <= x_tol && values[worst] - values[best] <= f_tol) break;

        RealVector centroid = RealVector::Zero(n);
        for (std::size_t i = 0; i < simplex.size(); ++i)
            if (i != worst) centroid += simplex[i];
        centroid /= static_cast<double>(n);

        const RealVector reflected = centroid + (centroid - simplex[worst]);
        const double fr = f(reflected);
        if (fr < values[best]) {
            const RealVector expanded = centroid + 2.0 * (centroid - simplex[worst]);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        const RealVector contracted =
            outside ? RealVector(centroid + 0.5 * (reflected - centroid)) : RealVector(centroid + 0.5 * (simplex[worst] - centroid));
        const double fc = f(contracted);
        if (fc < std::min(fr, values[worst])) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i == best) continue;
            simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
            values[i] = f(simplex[i]);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    res.x = simplex[best];
    res.value = values[best];
    res.grad_norm = std::numeric_limits<double>::quiet_NaN();
    res.iterations = it;
    res.converged = it < max_iter;
    return res;
}

LocalResult coordinate_polish(const Objective& f, RealVector x0, double step, double min_step, int max_iter) {
    LocalResult res;
    res.x = std::move(x0);
    res.value = f(res.x);
    int it = 0;
    while (step >= min_step && it < max_iter) {
        bool improved = false;
        for (Eigen::Index i = 0; i < res.x.size(); ++i) {
            for (double sign : {1.0, -1.0}) {
                RealVector trial = res.x;
                trial(i) += sign * step;
                const double ft = f(trial);
                ++it;
                if (ft < res.value) {
                    res.x = std::move(trial);
                    res.value = ft;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    res.grad_norm = std::numeric_limits<double>::quiet_NaN();
    res.iterations = it;
    res.converged = step < min_step;
    return res;
}

namespace {

void check_problem(const GramFitProblem& prob) {
    const Eigen::Index n2 = static_cast<Eigen::Index>(prob.n) * prob.n;
    if (prob.n < 1 || prob.op.cols() != n2 || prob.target.size() != prob.op.rows())
        throw_input("gram_fit: operator shape does not match n^2 coefficients");
    if (prob.penalty_op.size() > 0 &&
        (prob.penalty_op.cols() != n2 || prob.penalty_target.size() != prob.penalty_op.rows()))
        throw_input("gram_fit: penalty operator shape does not match n^2 coefficients");
}

ComplexVector row_major_vec(const ComplexMatrix& m) { return numerics::vec(m); }

// f and the complex gradient g (df = Re sum conj(g) dV).
double residual_objective(const GramFitProblem& prob, const ComplexMatrix& v, double mu, ComplexMatrix* grad) {
    const ComplexVector wv = row_major_vec(ComplexMatrix(v * v.adjoint()));
    const ComplexVector r = prob.op * wv - prob.target;
    double f = r.squaredNorm();
    ComplexVector c;
    if (grad) c = prob.op.transpose() * r.conjugate();
    if (prob.penalty_op.size() > 0 && mu > 0.0) {
        const ComplexVector rb = prob.penalty_op * wv - prob.penalty_target;
        f += mu * rb.squaredNorm();
        if (grad) c += mu * (prob.penalty_op.transpose() * rb.conjugate());
    }
    if (grad) {
        const ComplexMatrix cm = numerics::unvec(c, prob.n, prob.n);
        *grad = 2.0 * (cm.transpose() + cm.conjugate()) * v;
    }
    return f;
}

RealVector pack(const ComplexMatrix& v) {
    const Eigen::Index n2 = v.size();
    RealVector x(2 * n2);
    const ComplexVector flat = row_major_vec(v);
    x.head(n2) = flat.real();
    x.tail(n2) = flat.imag();
    return x;
}

ComplexMatrix unpack(const RealVector& x, int n) {
    const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
    ComplexVector flat(n2);
    for (Eigen::Index k = 0; k < n2; ++k) flat(k) = cplx(x(k), x(n2 + k));
    return numerics::unvec(flat, n, n);
}

struct RestartOutcome {
    ComplexMatrix v;
    double objective = 0.0;
    double grad_norm = 0.0;
    bool converged = false;
};

RestartOutcome run_restart(const GramFitProblem& prob, const ComplexMatrix& v0, const OptConfig& cfg,
                           std::span<const double> weights) {
    RealVector x = pack(v0);
    opt::LocalResult local;
    double mu = 0.0;
    const std::vector<double> stages = weights.empty() ? std::vector<double>{0.0}
                                                       : std::vector<double>(weights.begin(), weights.end());
    for (double stage_mu : stages) {
        mu = stage_mu;
        const double tol = cfg.grad_tol * std::max(1.0, mu);
        auto fn = [&](const RealVector& xv, RealVector* g) {
            ComplexMatrix cg;
            const double val = residual_objective(prob, unpack(xv, prob.n), mu, g ? &cg : nullptr);
            if (g) *g = pack(cg);
            return val;
        };
        local = bfgs(fn, x, cfg.max_iter, tol);
        x = local.x;
    }
    RestartOutcome out;
    out.v = unpack(x, prob.n);
    out.objective = local.value;
    out.grad_norm = local.grad_norm;
    out.converged = local.converged || local.grad_norm <= std::sqrt(cfg.grad_tol) * std::max(1.0, mu);
    return out;
}

}  // namespace

double gram_fit_objective(const GramFitProblem& prob, const ComplexMatrix& v, double mu, ComplexMatrix* grad) {
    check_problem(prob);
    if (v.rows() != prob.n || v.cols() != prob.n) throw_input("gram_fit_objective: V has the wrong shape");
    return residual_objective(prob, v, mu, grad);
}

ComplexMatrix gram_fit_warm_start(const GramFitProblem& prob, double mu) {
    check_problem(prob);
    const int n = prob.n;
    ComplexMatrix stacked = prob.op;
    ComplexVector rhs = prob.target;
    if (prob.penalty_op.size() > 0 && mu > 0.0) {
        const double s = std::sqrt(mu);
        stacked.conservativeResize(prob.op.rows() + prob.penalty_op.rows(), Eigen::NoChange);
        stacked.bottomRows(prob.penalty_op.rows()) = s * prob.penalty_op;
        rhs.conservativeResize(stacked.rows());
        rhs.tail(prob.penalty_op.rows()) = s * prob.penalty_target;
    }
    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(stacked);
    cod.setThreshold(1e-10);
    const ComplexVector wls = cod.solve(rhs);
    ComplexMatrix w = numerics::unvec(wls, n, n);
    w = 0.5 * (w + w.adjoint()).eval();
    const auto eig = numerics::eig_hermitian(w, 1e-6);
    RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * root.cast<cplx>().asDiagonal();
}

GramFitResult gram_fit(const GramFitProblem& prob, const OptConfig& cfg, std::span<const double> penalty_weights) {
    check_problem(prob);
    cfg.validate();
    const int n = prob.n;
    const double mu0 = penalty_weights.empty() ? 0.0 : penalty_weights.front();
    const ComplexMatrix warm = gram_fit_warm_start(prob, mu0);
    const double scale = std::sqrt(std::max((warm * warm.adjoint()).trace().real(), 1e-3) / n);

    std::vector<ComplexMatrix> starts;
    starts.reserve(static_cast<std::size_t>(cfg.restarts));
    for (int k = 0; k < cfg.restarts; ++k) {
        if (k == 0) {
            starts.push_back(warm);
            continue;
        }
        Rng rng(cfg.seed * 0x100000001b3ULL + static_cast<std::uint64_t>(k));
        ComplexMatrix noise(n, n);
        for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
        starts.push_back(k % 2 == 1 ? ComplexMatrix(warm + 0.3 * scale * noise) : ComplexMatrix(scale * noise));
    }

    std::vector<RestartOutcome> outcomes(starts.size());
    if (cfg.parallel && starts.size() > 1) {
        std::vector<std::future<RestartOutcome>> futures;
        for (const auto& s : starts)
            futures.push_back(std::async(std::launch::async, [&, s] { return run_restart(prob, s, cfg, penalty_weights); }));
        for (std::size_t k = 0; k < futures.size(); ++k) outcomes[k] = futures[k].get();
    } else {
        for (std::size_t k = 0; k < starts.size(); ++k) outcomes[k] = run_restart(prob, starts[k], cfg, penalty_weights);
    }

    std::size_t best = 0;
    int converged = 0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (outcomes[k].converged) ++converged;
        if (outcomes[k].objective < outcomes[best].objective) best = k;
    }
    if (converged == 0) {
        std::ostringstream os;
        os << "gram_fit: no restart converged (best gradient norm " << outcomes[best].grad_norm << ")";
        throw_optimizer(os.str());
    }

    GramFitResult res;
    res.v = outcomes[best].v;
    res.w = res.v * res.v.adjoint();
    const ComplexVector wv = row_major_vec(res.w);
    res.residual = (prob.op * wv - prob.target).norm();
    if (prob.penalty_op.size() > 0) res.penalty_residual = (prob.penalty_op * wv - prob.penalty_target).norm();
    res.objective = outcomes[best].objective;
    res.grad_norm = outcomes[best].grad_norm;
    res.best_restart = static_cast<int>(best);
    res.restarts_converged = converged;
    return res;
}

}  // namespace opt
}  // namespace sicrep

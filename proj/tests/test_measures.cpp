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

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sicrep/error.hpp"
#include "sicrep/io.hpp"
#include "sicrep/measures.hpp"
#include "sicrep/numerics.hpp"

using namespace sicrep;

namespace {

SicPovm qutrit() {
    return SicPovm::from_fiducial(io::fiducial_from_json(io::read_file(SICREP_TEST_DATA "/fiducial_d3.json")));
}

GkslSpec random_spec(int d, int noise, std::mt19937_64& rng) {
    GkslSpec spec{d, oracle::random_hermitian(d, rng), {}};
    for (int k = 0; k < noise; ++k) spec.noise_ops.push_back(0.4 * oracle::random_complex(d, d, rng));
    return spec;
}

RealMatrix rotate(const RealMatrix& l, const UnitaryGenBasis& b, const RealVector& lambda) {
    RealMatrix gen = RealMatrix::Zero(l.rows(), l.cols());
    for (int i = 0; i < b.size(); ++i) gen += lambda(i) * b[i];
    const RealMatrix u = numerics::expm(gen);
    return u * l * u.transpose();
}

}  // namespace

TEST(Negativity, ReadsOffDiagonalMinimum) {
    RealMatrix m(3, 3);
    m << -5, 0.2, -0.3, 0.1, -1, 0.4, -0.7, 0.8, 3;
    EXPECT_DOUBLE_EQ(negativity(m), 0.7);
    EXPECT_DOUBLE_EQ(negativity(RealMatrix::Identity(3, 3) * -4.0), 0.0);
}

TEST(Negativity, InvariantUnderRelabelling) {
    std::mt19937_64 rng(61);
    const RealMatrix m = oracle::random_generator(9, -1.0, 1.0, rng);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 10; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::PermutationMatrix<Eigen::Dynamic> p(Eigen::Map<Eigen::VectorXi>(perm.data(), 9));
        const RealMatrix pm = p * m * p.transpose();
        EXPECT_DOUBLE_EQ(negativity(pm), negativity(m));
    }
}

TEST(Classicality, OffDiagonalSignDecides) {
    std::mt19937_64 rng(62);
    const Generator good{2, oracle::random_generator(4, 0.0, 1.0, rng), std::nullopt, std::nullopt};
    EXPECT_TRUE(classicality_check(good));
    Generator bad = good;
    bad.matrix(1, 0) -= bad.matrix(1, 0) + 0.01;
    bad.matrix(0, 0) = -(bad.matrix.col(0).sum() - bad.matrix(0, 0));
    EXPECT_FALSE(classicality_check(bad));
    EXPECT_TRUE(classicality_check(bad, 0.02));
}

TEST(Classicality, ClassicalGeneratorsEvolveStochastically) {
    std::mt19937_64 rng(63);
    for (int k = 0; k < 20; ++k) {
        const Generator g{2, oracle::random_generator(4, 0.0, 2.0, rng), std::nullopt, std::nullopt};
        for (double t : {0.01, 0.5, 3.0}) EXPECT_GE(evolve(g, t).matrix.minCoeff(), -1e-12);
    }
}

TEST(Classicality, NegativeEntryShowsUpAtShortTimes) {
    std::mt19937_64 rng(64);
    for (int k = 0; k < 20; ++k) {
        const Generator g{2, oracle::random_generator(4, -1.0, 1.0, rng), std::nullopt, std::nullopt};
        if (classicality_check(g)) continue;
        EXPECT_LT(evolve(g, 1e-3).matrix.minCoeff(), 0.0);
    }
}

TEST(DeltaQuant, ZeroForClassicalGenerators) {
    std::mt19937_64 rng(65);
    const UnitaryGenBasis b = basis_hunit(SicPovm::builtin_qubit());
    const RealMatrix l = oracle::random_generator(4, 0.0, 1.0, rng);
    const DeltaQuantReport r = delta_quant(l, b);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_EQ(r.lambda.size(), 3);
    EXPECT_EQ(r.restarts, OptConfig::simplex_defaults().restarts);
}

TEST(DeltaQuant, BoundedByNegativityAndNonnegative) {
    std::mt19937_64 rng(66);
    const SicPovm sic = SicPovm::builtin_qubit();
    const UnitaryGenBasis b = basis_hunit(sic);
    OptConfig opt = OptConfig::simplex_defaults();
    opt.restarts = 8;
    for (int k = 0; k < 6; ++k) {
        const RealMatrix l = lgen_from_gksl(random_spec(2, k % 3, rng), sic).matrix;
        const DeltaQuantReport r = delta_quant(l, b, opt);
        EXPECT_GE(r.value, 0.0);
        EXPECT_LE(r.value, negativity(l) + 1e-12);
        EXPECT_NEAR(negativity(rotate(l, b, r.lambda)), r.value, 1e-12);
        EXPECT_GE(r.restarts_agreeing, 1);
    }
}

TEST(DeltaQuant, InvariantUnderUnitaryConjugation) {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const SicPovm sic = SicPovm::builtin_qubit();
    const UnitaryGenBasis b = basis_hunit(sic);
    for (int k = 0; k < 3; ++k) {
        const RealMatrix l = lgen_from_gksl(random_spec(2, 1, rng), sic).matrix;
        const RealVector mu = RealVector::NullaryExpr(3, [&] { return u(rng); });
        const double a = delta_quant(l, b).value;
        const double c = delta_quant(rotate(l, b, mu), b).value;
        EXPECT_NEAR(a, c, 1e-3);
    }
}

TEST(DeltaQuant, PureRotationIsNonclassical) {
    const UnitaryGenBasis b = basis_hunit(SicPovm::builtin_qubit());
    const double v = delta_quant(0.5 * fixtures::h3(), b).value;
    EXPECT_GT(v, 0.1);
    EXPECT_NEAR(delta_quant(fixtures::h3(), b).value, 2.0 * v, 1e-4);
}

TEST(DeltaQuant, QutritRuns) {
    std::mt19937_64 rng(68);
    const SicPovm sic = qutrit();
    OptConfig opt = OptConfig::simplex_defaults();
    opt.restarts = 4;
    const RealMatrix l = lgen_from_gksl(random_spec(3, 1, rng), sic).matrix;
    const DeltaQuantReport r = delta_quant(l, basis_hunit(sic), opt);
    EXPECT_EQ(r.lambda.size(), 8);
    EXPECT_LE(r.value, negativity(l) + 1e-12);
}

TEST(MarkovProjection, GkslEvolutionIsItsOwnProjection) {
    std::mt19937_64 rng(69);
    const SicPovm sic = SicPovm::builtin_qubit();
    for (int k = 0; k < 3; ++k) {
        const GkslSpec spec = random_spec(2, 2, rng);
        const PseudoStochMatrix s = evolve(lgen_from_gksl(spec, sic), 0.5);
        const MarkovReport r = markov_projection(s, sic);
        EXPECT_LT((r.s_mark.matrix - s.matrix).cwiseAbs().maxCoeff(), 1e-5);
        EXPECT_LT(r.delta_nmark, 1e-5);
        EXPECT_LT(r.log_residual, 1e-5);
        EXPECT_NEAR(delta_nmark(s, sic), r.delta_nmark, 1e-9);
    }
}

TEST(MarkovProjection, IdentityHasZeroLog) {
    const SicPovm sic = SicPovm::builtin_qubit();
    const MarkovReport r = markov_projection(PseudoStochMatrix{2, 2, RealMatrix::Identity(4, 4)}, sic);
    EXPECT_LT(r.log.cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(r.delta_nmark, 1e-9);
}

TEST(MarkovProjection, DistanceMatchesDefinition) {
    const SicPovm sic = SicPovm::builtin_qubit();
    const MarkovReport r = markov_projection(fixtures::s_u_table(), sic);
    EXPECT_NEAR(r.delta_nmark, std::sqrt((fixtures::s_u_table() - r.s_mark.matrix).squaredNorm()) / 4.0, 1e-12);
    EXPECT_LT((r.h_part - project_unit(r.log, basis_hunit(sic))).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(r.delta_nmark, 0.0);
}

TEST(MarkovProjection, NegativeSpectrumIsDomainError) {
    const SicPovm sic = SicPovm::builtin_qubit();
    try {
        markov_projection(builtin_ptp(PtpMap::Transposition, sic), sic);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
        EXPECT_NE(std::string(e.what()).find("-1"), std::string::npos);
    }
}

TEST(ExperimentCompose, ProductOfStages) {
    const SicPovm sic = SicPovm::builtin_qubit();
    std::mt19937_64 rng(70);
    RealMatrix prep(4, 2);
    for (int c = 0; c < 2; ++c) prep.col(c) = state_to_prob({2, oracle::random_density(2, rng)}, sic).probs;
    const PseudoStochMatrix s1 = kraus_to_pstoch({2, 2, oracle::random_kraus(2, 2, rng)}, sic, sic);
    const PseudoStochMatrix s2 = kraus_to_pstoch({2, 2, oracle::random_kraus(2, 2, rng)}, sic, sic);
    PovmSet povm{2, {}};
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    povm.effects = {e0, ComplexMatrix::Identity(2, 2) - e0};
    const ExperimentScheme e{prep, {s1, s2}, measurement_map(povm, sic)};
    const ExperimentResult r = experiment_compose(e, &sic);
    EXPECT_LT((r.q - e.meas.bigm * s2.matrix * s1.matrix * prep).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_GE(r.q.minCoeff(), -1e-12);
    EXPECT_LT((r.q.colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(ExperimentCompose, RejectsInvalidPreparationsAndShapes) {
    const SicPovm sic = SicPovm::builtin_qubit();
    const PseudoStochMatrix t = builtin_ptp(PtpMap::Transposition, sic);
    RealMatrix prep(4, 1);
    prep.col(0) = RealVector::Constant(4, 0.25);
    const ExperimentScheme ok{prep, {t}, {RealMatrix::Identity(4, 4), RealMatrix::Identity(4, 4)}};
    EXPECT_TRUE(experiment_compose(ok, &sic).warnings.empty());

    RealMatrix invalid(4, 1);
    invalid.col(0) << 0.7, 0.1, 0.1, 0.1;
    EXPECT_THROW(experiment_compose({invalid, {}, ok.meas}, &sic), Error);
    EXPECT_THROW(experiment_compose({prep, {PseudoStochMatrix{3, 3, RealMatrix::Identity(9, 9)}}, ok.meas}), Error);
}

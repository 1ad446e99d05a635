// Copyright 2026 The hybridsim Authors.
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
#include "hybridsim/truncation.hpp"

#include "test_util.hpp"

using namespace hybridsim;
using namespace testutil;

namespace {

CVector uniform(Index d) { return CVector::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0)); }

// sum_j p_j w_j w_j^dagger, assembled without the library helper.
CMatrix average_oracle(const SparseEnsemble &e, Index d) {
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto &m : e.members) {
        for (Index i = 0; i < d; ++i) {
            for (Index j = 0; j < d; ++j) {
                out(i, j) += m.probability * m.w(i) * std::conj(m.w(j));
            }
        }
    }
    return out;
}

} // namespace

TEST(Truncate, UniformSixteenSparsityFour) {
    const CVector v = uniform(16);
    const SparseEnsemble e = randomized_truncate(v, 4);
    ASSERT_EQ(e.size(), 4u);
    double ptot = 0.0;
    for (const auto &m : e.members) {
        EXPECT_NEAR(m.probability, 0.25, 1e-15);
        EXPECT_LE(m.support.size(), 4u);
        EXPECT_NEAR(m.w.norm(), 1.0, 1e-14);
        ptot += m.probability;
    }
    EXPECT_NEAR(ptot, 1.0, 1e-15);
    // |v><v| - avg has eigenvalues 3/4 and -1/4 (x3 in the block span).
    EXPECT_NEAR(e.measured_trace_dist, 1.5, 1e-12);
    EXPECT_NEAR(ensemble_trace_distance(v, e), 1.5, 1e-12);
    EXPECT_NEAR(trn(v * v.adjoint() - average_oracle(e, 16)), 1.5, 1e-12);
}

TEST(Truncate, ExactWhenSparsityCoversSupport) {
    std::mt19937_64 rng(50);
    const CVector v = random_unit(rng, 8);
    const SparseEnsemble e = randomized_truncate(v, 8);
    EXPECT_EQ(e.size(), 1u);
    EXPECT_EQ(e.measured_trace_dist, 0.0);
    CVector sparse = CVector::Zero(8);
    sparse(2) = 0.6;
    sparse(5) = Complex(0.0, 0.8);
    EXPECT_EQ(randomized_truncate(sparse, 2).measured_trace_dist, 0.0);
}

TEST(Truncate, MeasuredDistanceMatchesOracle) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const Index d = 4 + trial % 20;
        const CVector v = random_unit(rng, d);
        const std::size_t s = 1 + static_cast<std::size_t>(trial) % static_cast<std::size_t>(d);
        const SparseEnsemble e = randomized_truncate(v, s);
        const CMatrix avg = average_oracle(e, d);
        EXPECT_NEAR(avg.trace().real(), 1.0, 1e-12);
        EXPECT_LT(opn(avg - avg.adjoint()), 1e-14);
        EXPECT_GE(Eigen::SelfAdjointEigenSolver<CMatrix>(avg).eigenvalues().minCoeff(), -1e-12);
        EXPECT_NEAR(e.measured_trace_dist, trn(v * v.adjoint() - avg), 1e-10);
        for (const auto &m : e.members) {
            EXPECT_LE(m.support.size(), s);
            Index nnz = 0;
            for (Index i = 0; i < d; ++i) {
                nnz += std::abs(m.w(i)) > 0.0 ? 1 : 0;
            }
            EXPECT_LE(static_cast<std::size_t>(nnz), s);
        }
    }
}

TEST(Truncate, AmplitudeBoundHoldsOnRandomVectors) {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        const Index d = 2 + trial % 31;
        const CVector v = random_unit(rng, d);
        const std::size_t s = 1 + static_cast<std::size_t>(trial * 7) % static_cast<std::size_t>(d);
        const SparseEnsemble e = randomized_truncate(v, s);
        const AmplitudeBoundCheck c = check_amplitude_bound(v, e);
        EXPECT_TRUE(c.holds) << "d=" << d << " s=" << s << " lhs=" << c.lhs << " rhs=" << c.rhs;
    }
}

TEST(Truncate, DistanceNonIncreasingInSparsity) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const CVector v = random_unit(rng, 24);
        double prev = INFINITY;
        for (std::size_t s = 1; s <= 24; ++s) {
            const double eps = randomized_truncate(v, s).measured_trace_dist;
            EXPECT_LE(eps, prev + 1e-12) << "s=" << s;
            prev = eps;
        }
        EXPECT_EQ(prev, 0.0);
    }
}

TEST(Truncate, TailGroupsDropMass) {
    const CVector v = uniform(16);
    const SparseEnsemble e = randomized_truncate(v, 2, 1);
    // One tail group plus the head keeps 4 of 16 entries.
    EXPECT_LE(e.size(), 2u);
    EXPECT_NEAR(average_oracle(e, 16).trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(e.measured_trace_dist, trn(v * v.adjoint() - average_oracle(e, 16)), 1e-10);
}

TEST(Truncate, DiagonalLinkHolds) {
    // The diagonal of the ensemble average tracks |v_i|^2; the trace norm dominates
    // the sum of absolute diagonal deviations.
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 20; ++trial) {
        const CVector v = random_unit(rng, 12);
        const SparseEnsemble e = randomized_truncate(v, 3);
        const AmplitudeChain c = amplitude_chain(v, e);
        EXPECT_LE(c.diagonal, e.measured_trace_dist + 1e-12);
    }
}

TEST(Truncate, LinearMixLinkCanFail) {
    // Counterexample: with an exact one-member ensemble the trace distance is zero
    // but the linear mixture link is not, so it cannot serve as an intermediate bound.
    std::mt19937_64 rng(56);
    const CVector v = random_unit(rng, 8);
    const SparseEnsemble e = randomized_truncate(v, 8);
    ASSERT_EQ(e.measured_trace_dist, 0.0);
    const AmplitudeChain c = amplitude_chain(v, e);
    EXPECT_GT(c.linear_mix, 0.1);
    EXPECT_NEAR(c.squared_mix, 0.0, 1e-14);
    EXPECT_NEAR(c.diagonal, 0.0, 1e-14);
}

TEST(EnsemblePrepare, SuccessProbabilityFormula) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const Index d = 4 + trial % 13;
        const CVector v = random_unit(rng, d);
        const SparseEnsemble e = randomized_truncate(v, 2);
        const EnsemblePreparation p = ensemble_prepare(e);
        double root_sum = 0.0;
        for (const auto &m : e.members) {
            root_sum += std::sqrt(m.probability);
        }
        EXPECT_NEAR(p.success_prob, 1.0 / (root_sum * root_sum), 1e-10);
        EXPECT_NEAR(p.formula_success_prob, p.success_prob, 1e-10);
        const CVector normalized = p.projected_state / p.projected_state.norm();
        const Complex ov = normalized.dot(v);
        const CVector aligned = normalized * (std::abs(ov) > 0 ? std::conj(ov) / std::abs(ov) : 1.0);
        EXPECT_LE((aligned - v).norm(), std::sqrt(e.measured_trace_dist) + 1e-9);
        EXPECT_LT(udefect(p.encoding.unitary), 1e-10);
        EXPECT_GE(p.prep_depth, 1u);
    }
}

TEST(EnsemblePrepare, UniformSixteen) {
    const SparseEnsemble e = randomized_truncate(uniform(16), 4);
    const EnsemblePreparation p = ensemble_prepare(e);
    EXPECT_NEAR(p.success_prob, 0.25, 1e-12);
    // All members share the phase of v, so the projected state is exactly v / 2.
    EXPECT_LT((p.projected_state - 0.5 * uniform(16)).norm(), 1e-12);
}

TEST(Truncate, Errors) {
    CVector v = uniform(4);
    EXPECT_HS_ERROR(randomized_truncate(2.0 * v, 2), NotUnit);
    EXPECT_HS_ERROR(randomized_truncate(v, 0), SparsityOutOfRange);
    EXPECT_HS_ERROR(randomized_truncate(v, 5), SparsityOutOfRange);
    EXPECT_HS_ERROR(ensemble_prepare(SparseEnsemble{}), InvalidConfig);
}

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
#include "hybridsim/hamiltonian.hpp"

#include <numbers>

#include "test_util.hpp"

using namespace hybridsim;
using namespace testutil;

namespace {

const char *kTfim3 = R"(# 3-site transverse-field Ising chain
dims 5 3 2
flags rescale
term 1: Z , Z , I
term 2: I , Z , Z
term 3: X , I , I
term 4: I , X , I
term 5: I , I , X
)";

CMatrix kron_chain(const std::vector<CMatrix> &fs) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (const auto &f : fs) {
        out = kron_oracle(out, f);
    }
    return out;
}

std::vector<double> eigvals(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> s(m);
    std::vector<double> v(s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size());
    return v;
}

std::size_t svd_rank(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto &s = svd.singularValues();
    std::size_t r = 0;
    for (Index i = 0; i < s.size(); ++i) {
        r += s(i) > 1e-10 * s(0) ? 1 : 0;
    }
    return r;
}

} // namespace

TEST(Hamspec, TfimGammaTotalsMatchHandComputation) {
    const TensorFactorHamiltonian h = parse_hamiltonian(kTfim3);
    ASSERT_EQ(h.K(), 5u);
    ASSERT_EQ(h.M(), 3u);
    ASSERT_EQ(h.d(), 2u);
    // Unscaled operator with halved Paulis, built independently.
    const CMatrix z = 0.5 * pauli('Z'), x = 0.5 * pauli('X'), i2 = CMatrix::Identity(2, 2);
    const CMatrix raw = kron_chain({z, z, i2}) + kron_chain({i2, z, z}) +
                        kron_chain({x, i2, i2}) + kron_chain({i2, x, i2}) +
                        kron_chain({i2, i2, x});
    const double g = 2.0 * opn(raw);
    EXPECT_NEAR(h.global_scale(), g, 1e-10);
    EXPECT_LT(opn(assemble_dense(h) - raw / g), 1e-12);
    // Each term's factors have eigenvalues +-1/2 (one of them divided by g).
    double total_gamma = 0.0, total_prime = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        total_gamma += h.term(i).gamma;
        total_prime += h.term(i).gamma_prime;
    }
    EXPECT_NEAR(total_prime, 5.0 / g, 1e-12);
    EXPECT_NEAR(total_gamma, (2 * 2.0 + 3 * 4.0) / g, 1e-12);
    EXPECT_NEAR(h.term(0).gamma, 2.0 / g, 1e-12);
    EXPECT_NEAR(h.term(2).gamma, 4.0 / g, 1e-12);
    EXPECT_EQ(h.term(1).nontrivial_set, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(h.max_nontrivial(), 2u);
}

TEST(Gamma, RandomTwoFactorBruteForceSeed11) {
    std::mt19937_64 rng(11);
    const CMatrix a = random_hermitian(rng, 3), b = random_hermitian(rng, 3);
    const TensorTerm t = make_term({a, b});
    double brute = 0.0;
    for (double la : eigvals(a)) {
        for (double lb : eigvals(b)) {
            brute += std::abs(la * lb);
        }
    }
    EXPECT_NEAR(t.gamma, brute, 1e-10 * brute);
    EXPECT_NEAR(t.gamma_prime, brute, 1e-10 * brute);
    EXPECT_EQ(t.term_rank, 9u);
}

TEST(Gamma, IdentityPaddingRelationAndBound) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 2 + trial % 3;
        const std::size_t M = 2 + trial % 3;
        std::vector<CMatrix> fs(M, CMatrix::Identity(static_cast<Index>(d), static_cast<Index>(d)));
        std::size_t planned = 0;
        for (std::size_t j = 0; j < M; ++j) {
            planned += (trial + j) % 2 == 0 ? 1 : 0;
        }
        std::size_t nontrivial = 0;
        for (std::size_t j = 0; j < M; ++j) {
            if ((trial + j) % 2 == 0) {
                CMatrix f = random_hermitian(rng, static_cast<Index>(d));
                f *= std::pow(0.5, 1.0 / static_cast<double>(planned)) / opn(f);
                fs[j] = f;
                ++nontrivial;
            }
        }
        const TensorTerm t = make_term(fs);
        EXPECT_EQ(t.nontrivial_set.size(), nontrivial);
        const double pad = std::pow(static_cast<double>(d), static_cast<double>(M - nontrivial));
        EXPECT_NEAR(t.gamma, pad * t.gamma_prime, 1e-10 * t.gamma);
        EXPECT_LE(t.op_norm(), 0.5 + 1e-12);
        EXPECT_LE(t.gamma_prime, std::pow(static_cast<double>(d), nontrivial) + 1e-12);
        EXPECT_EQ(t.term_rank, svd_rank(t.assemble()));
    }
}

TEST(Gamma, AllIdentityTermConvention) {
    const TensorTerm t = make_term({identity(2), identity(2)});
    EXPECT_TRUE(t.nontrivial_set.empty());
    EXPECT_DOUBLE_EQ(t.gamma_prime, 1.0);
    EXPECT_DOUBLE_EQ(t.gamma, 4.0);
}

TEST(Assemble, TfimMatchesIndexArithmeticOracle) {
    const TensorFactorHamiltonian h = parse_hamiltonian(kTfim3);
    CMatrix sum = CMatrix::Zero(8, 8);
    for (const auto &t : h.terms()) {
        sum += kron_chain(t.factors);
        EXPECT_LT(opn(t.assemble() - kron_chain(t.factors)), 1e-15);
    }
    EXPECT_LT(opn(assemble_dense(h) - sum), 1e-14);
}

TEST(Assemble, WeightedAndTimeDependent) {
    const TensorFactorHamiltonian h(
        2, {{pauli('Z') * 0.5, identity(2)}, {identity(2), pauli('X') * 0.5}},
        std::vector<TimeCoefficient>{TimeCoefficient::cosine(), TimeCoefficient::constant(2.0)});
    const CMatrix a = h.term(0).assemble(), b = h.term(1).assemble();
    EXPECT_LT(opn(assemble_weighted(h, {0.3, -1.0}) - (0.3 * a - b)), 1e-15);
    EXPECT_LT(opn(assemble_dense(h, 0.5) - (std::cos(0.5) * a + 2.0 * b)), 1e-15);
    EXPECT_HS_ERROR(assemble_weighted(h, {1.0}), DimensionMismatch);
}

TEST(Commuting, StabilizerPairAndWitness) {
    const CMatrix z = pauli('Z') * 0.5, x = pauli('X') * 0.5, i2 = identity(2);
    const TensorFactorHamiltonian ok(2, {{z, z, i2, i2}, {x, x, i2, i2}});
    EXPECT_TRUE(check_pairwise_commuting(ok, 1e-9).commuting);
    const TensorFactorHamiltonian bad(2, {{z, i2}, {i2, z}, {x, i2}});
    const CommutingCheck c = check_pairwise_commuting(bad, 1e-9);
    EXPECT_FALSE(c.commuting);
    EXPECT_EQ(c.i, 0u);
    EXPECT_EQ(c.j, 2u);
    // ||[Z/2, X/2]|| = ||iY/2|| = 1/2.
    EXPECT_NEAR(c.norm, 0.5, 1e-12);
}

TEST(Coefficients, PolynomialIntegralAgainstQuadrature) {
    const TimeCoefficient c = TimeCoefficient::polynomial({0.0, 0.0, 3.0});
    const double beta = integrate_coefficient(c, 1.5);
    EXPECT_NEAR(beta, 3.375, 1e-14);
    EXPECT_NEAR(beta, integrate([&](double s) { return c.value(s); }, 0.0, 1.5), 1e-12);
}

TEST(Coefficients, AllKindsAgainstQuadrature) {
    const std::vector<TimeCoefficient> cs = {
        TimeCoefficient::constant(0.7),         TimeCoefficient::polynomial({1.0, -2.0, 0.5}),
        TimeCoefficient::cosine(1.3, 2.0, 0.4), TimeCoefficient::sine(0.8, 3.0, -0.2),
        TimeCoefficient::exp_decay(1.1, 0.6),   TimeCoefficient::cosine(0.5, 0.0, 0.3),
        TimeCoefficient::exp_decay(0.9, 0.0),
    };
    for (double t : {0.0, 0.3, 1.0, 2.7, -1.2}) {
        for (const auto &c : cs) {
            const double q = integrate([&](double s) { return c.value(s); }, 0.0, t);
            EXPECT_NEAR(integrate_coefficient(c, t), q, 1e-11)
                << coefficient_kind_name(c.kind) << " t=" << t;
        }
    }
}

TEST(Coefficients, PolyDegree) {
    EXPECT_EQ(coefficient_poly_degree(TimeCoefficient::constant(2.0), 3.0, 1e-8), 1u);
    // beta of a degree-2 alpha is cubic: 3 coefficients -> degree 3.
    EXPECT_EQ(coefficient_poly_degree(TimeCoefficient::polynomial({0.0, 0.0, 3.0}), 1.0, 1e-8), 3u);
    const std::size_t lo = coefficient_poly_degree(TimeCoefficient::cosine(), 1.0, 1e-4);
    const std::size_t hi = coefficient_poly_degree(TimeCoefficient::cosine(), 1.0, 1e-10);
    const std::size_t far = coefficient_poly_degree(TimeCoefficient::cosine(), 10.0, 1e-10);
    EXPECT_LT(lo, hi);
    EXPECT_LT(hi, far);
    EXPECT_EQ(coefficient_poly_degree(TimeCoefficient::cosine(), 0.0, 1e-8), 0u);
}

TEST(Validation, NormPremiseAndDimensions) {
    EXPECT_HS_ERROR(TensorFactorHamiltonian(2, {{pauli('Z'), identity(2)}}), NormPremiseViolated);
    EXPECT_HS_ERROR(TensorFactorHamiltonian(2, {{pauli('Z') * 0.5, identity(3)}}),
                    DimensionMismatch);
    EXPECT_HS_ERROR(TensorFactorHamiltonian(2, {{pauli('Z') * 0.5}, {identity(2), identity(2)}}),
                    DimensionMismatch);
    CMatrix nh = CMatrix::Zero(2, 2);
    nh(0, 1) = 0.3;
    try {
        TensorFactorHamiltonian(2, {{identity(2), identity(2)}, {identity(2) * 0.1, nh}});
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
        EXPECT_NE(std::string(e.what()).find("term 2 factor 2"), std::string::npos) << e.what();
    }
    // Rescale policy accepts the same input.
    const TensorFactorHamiltonian ok(2, {{pauli('Z'), pauli('X')}}, std::nullopt,
                                     NormPolicy{true, true});
    EXPECT_NEAR(opn(assemble_dense(ok)), 0.5, 1e-12);
    const TensorFactorHamiltonian h(2, {{pauli('Z') * 0.5, identity(2)}});
    EXPECT_HS_ERROR(h.coefficients(), CoefficientsMissing);
}

TEST(Hamspec, LiteralsCommentsAndCoefficients) {
    const TensorFactorHamiltonian h = parse_hamiltonian(R"(
        dims 2 2 2   # K M d
        term 1: [ 0.25 0.1-0.2i ; 0.1+0.2i -0.25 ] , I
        term 2: I , [ 0 -0.5i ; 0.5i 0 ]
        coeff 1: cos 2 1 0
        coeff 2: poly 1 0 3
    )");
    ASSERT_TRUE(h.has_coefficients());
    EXPECT_EQ(h.coefficients()[0].kind, CoefficientKind::Cosine);
    EXPECT_EQ(h.coefficients()[1].kind, CoefficientKind::Polynomial);
    EXPECT_EQ(h.term(0).factors[0](0, 1), Complex(0.1, -0.2));
    EXPECT_LT(opn(h.term(1).factors[1] - 0.5 * pauli('Y')), 1e-15);
    EXPECT_FALSE(h.term(0).nontrivial_set.empty());
}

TEST(Hamspec, NamedPaulisWithoutRescaleAreBare) {
    EXPECT_HS_ERROR(parse_hamiltonian("dims 1 1 2\nterm 1: Z\n"), NormPremiseViolated);
}

TEST(Hamspec, ParseErrors) {
    auto expect_parse = [](const char *text, const char *needle) {
        try {
            parse_hamiltonian(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const Error &e) {
            EXPECT_TRUE(e.kind() == ErrorKind::ParseError ||
                        e.kind() == ErrorKind::DimensionMismatch)
                << e.what();
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_parse("dims 1 1 2\nterm 1: Q\n", "line 2");
    expect_parse("dims 1 1 2\nterm 1: [ 1 0 ; 0 ]\n", "line 2");
    expect_parse("dims 2 1 2\nflags rescale\nterm 1: Z\n", "term");
    expect_parse("dims 1 2 2\nflags rescale\nterm 1: Z\n", "line 3");
    expect_parse("bogus 1\n", "line 1");
    expect_parse("dims 1 1 2\nflags rescale\nterm 1: Z\ncoeff 1: wobble 1\n", "line 4");
}

TEST(Hamspec, LoadMissingFile) {
    EXPECT_HS_ERROR(load_hamiltonian("/nonexistent/file.ham"), ParseError);
}

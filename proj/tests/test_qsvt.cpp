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
#include "hybridsim/qsvt.hpp"

#include <numbers>

#include "test_util.hpp"

using namespace hybridsim;
using namespace testutil;

namespace {

std::complex<double> eval_ja(const JacobiAngerPoly &p, double x) {
    return {p.real.eval(x), p.imag.eval(x)};
}

} // namespace

TEST(Bessel, J0AtOneAgainstSeries) {
    EXPECT_NEAR(bessel_j(0, 1.0), bessel_series(0, 1.0), 1e-14);
    EXPECT_NEAR(bessel_j(0, 1.0), 0.7651976865579666, 1e-15);
}

TEST(Bessel, AgainstStdAcrossRegimes) {
    for (double t : {0.01, 0.5, 1.0, 5.0, 11.9, 12.1, 20.0, 45.0}) {
        for (int k = 0; k <= 60; k += 3) {
            EXPECT_NEAR(bessel_j(k, t), std::cyl_bessel_j(static_cast<double>(k), t), 1e-12)
                << "k=" << k << " t=" << t;
        }
    }
}

TEST(Bessel, Symmetries) {
    EXPECT_NEAR(bessel_j(-3, 2.0), -bessel_j(3, 2.0), 1e-16);
    EXPECT_NEAR(bessel_j(-4, 2.0), bessel_j(4, 2.0), 1e-16);
    EXPECT_NEAR(bessel_j(3, -2.0), -bessel_j(3, 2.0), 1e-16);
    EXPECT_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_EQ(bessel_j(2, 0.0), 0.0);
}

TEST(Chebyshev, GridAndClenshaw) {
    const auto g = chebyshev_grid(7);
    ASSERT_EQ(g.size(), 7u);
    EXPECT_NEAR(g[3], 0.0, 1e-15);
    ChebPoly p;
    p.coeffs = {0.0, 0.0, 0.0, 1.0};
    for (double x : {-1.0, -0.3, 0.2, 0.99}) {
        EXPECT_NEAR(p.eval(x), std::cos(3.0 * std::acos(x)), 1e-14);
    }
    EXPECT_EQ(ChebPoly::identity().eval(0.37), 0.37);
    EXPECT_EQ(ChebPoly::zero().degree(), 0u);
}

TEST(JacobiAnger, GridSupAtUnitTime) {
    const JacobiAngerPoly p = jacobi_anger(1.0, 1e-6);
    EXPECT_LE(2.0 * p.sup_err, 1e-6);
    // Independent uniform grid, denser than the search grid.
    double sup = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double x = -1.0 + i / 10000.0;
        sup = std::max(sup, std::abs(eval_ja(p, x) - 0.5 * std::polar(1.0, -x)));
    }
    EXPECT_LE(2.0 * sup, 1e-6);
}

TEST(JacobiAnger, FrozenDegrees) {
    // From a separate std::cyl_bessel_j based linear search.
    struct Row {
        double t, delta;
        std::size_t p;
    };
    const Row rows[] = {{0.5, 1e-2, 2}, {1.0, 1e-6, 7},  {1.0, 1e-10, 10}, {2.0, 1e-6, 9},
                        {4.0, 1e-4, 11}, {8.0, 1e-6, 19}, {16.0, 1e-8, 34}, {32.0, 1e-6, 50}};
    for (const Row &r : rows) {
        EXPECT_EQ(jacobi_anger(r.t, r.delta).degree, r.p) << "t=" << r.t << " delta=" << r.delta;
    }
}

TEST(JacobiAnger, DegreeOrdering) {
    std::size_t prev = 0;
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const std::size_t p = jacobi_anger(t, 1e-6).degree;
        EXPECT_GE(p, prev);
        prev = p;
    }
    prev = 0;
    for (double d : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
        const std::size_t p = jacobi_anger(3.0, d).degree;
        EXPECT_GE(p, prev);
        prev = p;
    }
    EXPECT_LE(jacobi_anger_error(2.0, 20), jacobi_anger_error(2.0, 10));
}

TEST(JacobiAnger, ParityAndModulus) {
    const JacobiAngerPoly p = jacobi_anger(5.0, 1e-8);
    for (std::size_t k = 0; k < p.real.coeffs.size(); ++k) {
        if (k % 2 == 1) {
            EXPECT_EQ(p.real.coeffs[k], 0.0);
        }
    }
    for (std::size_t k = 0; k < p.imag.coeffs.size(); ++k) {
        if (k % 2 == 0) {
            EXPECT_EQ(p.imag.coeffs[k], 0.0);
        }
    }
    for (double x : {0.1, 0.45, 0.8, 1.0}) {
        EXPECT_NEAR(p.real.eval(x), p.real.eval(-x), 1e-14);
        EXPECT_NEAR(p.imag.eval(x), -p.imag.eval(-x), 1e-14);
    }
    for (double x : chebyshev_grid(501)) {
        EXPECT_LE(std::abs(eval_ja(p, x)), 0.5 + 1e-12);
    }
}

TEST(JacobiAnger, Errors) {
    EXPECT_HS_ERROR(jacobi_anger(1.0, 0.0), InvalidConfig);
    EXPECT_HS_ERROR(jacobi_anger(1.0, 0.7), InvalidConfig);
    EXPECT_HS_ERROR(jacobi_anger(500.0, 1e-8, 50), DegreeOverflow);
}

TEST(JacobiAnger, ZeroTime) {
    const JacobiAngerPoly p = jacobi_anger(0.0, 1e-6);
    EXPECT_NEAR(p.real.eval(0.3), 0.5, 1e-15);
    EXPECT_NEAR(p.imag.eval(0.3), 0.0, 1e-15);
}

TEST(ApplyPoly, RandomHermitianMatchesExpm) {
    std::mt19937_64 rng(40);
    CMatrix a = random_hermitian(rng, 8);
    a *= 0.9 / opn(a);
    const double t = 1.7;
    const JacobiAngerPoly p = jacobi_anger(t, 1e-8);
    const BlockEncoding e = apply_poly(dilate(a, 1.0), p.real, p.imag);
    EXPECT_LT(opn(2.0 * e.block() - expm_taylor(a, t)), 1e-7);
    EXPECT_LE(opn(2.0 * e.block() - expm_taylor(a, t)), 2.0 * e.err);
    EXPECT_LT(opn(e.block() * a - a * e.block()), 1e-10);
    EXPECT_LT(udefect(e.unitary), 1e-10);
}

TEST(ApplyPoly, CostAndError) {
    std::mt19937_64 rng(41);
    CMatrix a = random_hermitian(rng, 4);
    a /= opn(a);
    BlockEncoding u = dilate(a, 1.0);
    u.cost.prep_queries = 3;
    u.err = 1e-12;
    const JacobiAngerPoly p = jacobi_anger(1.0, 1e-6);
    const BlockEncoding e = apply_poly(u, p.real, p.imag);
    EXPECT_EQ(e.cost.prep_queries, 3u * (p.degree + 1));
    EXPECT_GE(e.err, 4.0 * static_cast<double>(p.degree) * std::sqrt(1e-12));
    EXPECT_GE(e.err, p.sup_err);
}

TEST(ApplyPoly, RejectsNonHermitianBlock) {
    std::mt19937_64 rng(42);
    const CMatrix a = random_contraction(rng, 3);
    const JacobiAngerPoly p = jacobi_anger(1.0, 1e-4);
    EXPECT_HS_ERROR(apply_poly(dilate(a, 1.0), p.real, p.imag), NotHermitianBlock);
}

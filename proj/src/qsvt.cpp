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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hybridsim/errors.hpp"

namespace hybridsim {

namespace {

// Relative slack on grid-measured sup norms; covers the gap between the
// grid maximum and the continuous maximum for the degrees used here.
constexpr double kGridSlack = 1.02;
constexpr double kRoundoffSlack = 1e-12;

double clenshaw(const std::vector<double> &c, double x) {
    if (c.empty()) {
        return 0.0;
    }
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

long double bessel_series(int k, long double t) {
    const long double h = t / 2.0L;
    long double term = 1.0L;
    for (int j = 1; j <= k; ++j) {
        term *= h / static_cast<long double>(j);
    }
    long double sum = term;
    const long double h2 = h * h;
    for (int m = 0; m < 400; ++m) {
        term *= -h2 / (static_cast<long double>(m + 1) * static_cast<long double>(m + k + 1));
        sum += term;
        if (std::abs(term) <= 1e-24L * std::abs(sum) && m > h) {
            break;
        }
        if (term == 0.0L) {
            break;
        }
    }
    return sum;
}

// Miller's backward recurrence normalized by J0 + 2 sum J_{2m} = 1; t > 0.
double bessel_miller(int k, double t) {
    const int top = std::max(k, static_cast<int>(std::ceil(t)));
    int start = top + static_cast<int>(std::ceil(std::sqrt(160.0 * top))) + 20;
    start += start % 2;
    long double jp1 = 0.0L, j = 1e-300L, result = 0.0L, norm = 0.0L;
    for (int n = start; n > 0; --n) {
        const long double jm1 = 2.0L * n / t * j - jp1;
        jp1 = j;
        j = jm1;
        if (std::abs(j) > 1e250L) {
            j *= 1e-250L;
            jp1 *= 1e-250L;
            result *= 1e-250L;
            norm *= 1e-250L;
        }
        // j now holds J_{n-1}.
        if (n - 1 == k) {
            result = j;
        }
        if ((n - 1) % 2 == 0 && n - 1 > 0) {
            norm += 2.0L * j;
        }
    }
    norm += j;
    return static_cast<double>(result / norm);
}

std::vector<double> truncated_coeffs(double t, std::size_t degree, bool real_part) {
    std::vector<double> c(degree + 1, 0.0);
    for (std::size_t k = 0; k <= degree; ++k) {
        const bool even = k % 2 == 0;
        if (real_part != even) {
            continue;
        }
        const double jk = bessel_j(static_cast<int>(k), t);
        if (real_part) {
            const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
            c[k] = (k == 0 ? 1.0 : 2.0 * sign) * jk * 0.5;
        } else {
            const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            c[k] = -2.0 * sign * jk * 0.5;
        }
    }
    return c;
}

struct GridEval {
    double sup_err = 0.0;
    double max_mod = 0.0;
};

GridEval evaluate_on_grid(const std::vector<double> &cr, const std::vector<double> &ci, double t,
                          const std::vector<double> &grid, double factor) {
    GridEval g;
    for (double x : grid) {
        const Complex q = factor * Complex(clenshaw(cr, x), clenshaw(ci, x));
        const Complex target = 0.5 * std::polar(1.0, -x * t);
        g.sup_err = std::max(g.sup_err, std::abs(q - target));
        g.max_mod = std::max(g.max_mod, std::abs(q));
    }
    return g;
}

struct Candidate {
    std::vector<double> cr, ci;
    double factor = 1.0;
    GridEval eval;
};

Candidate build_candidate(double t, std::size_t degree, const std::vector<double> &grid) {
    Candidate c;
    c.cr = truncated_coeffs(t, degree, true);
    c.ci = truncated_coeffs(t, degree, false);
    GridEval raw = evaluate_on_grid(c.cr, c.ci, t, grid, 1.0);
    if (raw.max_mod > 0.5) {
        c.factor = 0.5 / raw.max_mod;
        c.eval = evaluate_on_grid(c.cr, c.ci, t, grid, c.factor);
    } else {
        c.eval = raw;
    }
    return c;
}

} // namespace

double ChebPoly::eval(double x) const { return clenshaw(coeffs, x); }

ChebPoly ChebPoly::zero() { return ChebPoly{{0.0}, 0.0}; }

ChebPoly ChebPoly::identity() { return ChebPoly{{0.0, 1.0}, 0.0}; }

std::vector<double> chebyshev_grid(std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        g[j] = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
    }
    return g;
}

double bessel_j(int k, double t) {
    if (k < 0) {
        const double v = bessel_j(-k, t);
        return (-k) % 2 == 0 ? v : -v;
    }
    if (t == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    const double sign = (t < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
    const double at = std::abs(t);
    if (at <= 12.0) {
        return sign * static_cast<double>(bessel_series(k, static_cast<long double>(at)));
    }
    return sign * bessel_miller(k, at);
}

double jacobi_anger_error(double t, std::size_t degree) {
    static const std::vector<double> grid = chebyshev_grid();
    return build_candidate(t, degree, grid).eval.sup_err;
}

JacobiAngerPoly jacobi_anger(double t, double delta, std::size_t degree_cap) {
    if (!(delta > 0.0 && delta < 0.5)) {
        raise(ErrorKind::InvalidConfig, "delta must lie in (0, 1/2)");
    }
    static const std::vector<double> grid = chebyshev_grid();
    auto ok = [&](std::size_t p) { return 2.0 * build_candidate(t, p, grid).eval.sup_err <= delta; };

    const auto cap = static_cast<long long>(degree_cap);
    auto overflow = [&] {
        raise(ErrorKind::DegreeOverflow, "degree above cap " + std::to_string(degree_cap) +
                                             " for t=" + std::to_string(t) +
                                             " delta=" + std::to_string(delta));
    };
    // Degree grows at least like |t|, so a huge t fails fast without building the polynomial.
    if (std::abs(t) > static_cast<double>(cap)) {
        overflow();
    }
    long long lo = -1;
    long long hi = std::min(cap, static_cast<long long>(std::ceil(std::abs(t))) + 4);
    while (!ok(static_cast<std::size_t>(hi))) {
        if (hi == cap) {
            overflow();
        }
        lo = hi;
        hi = std::min(cap, hi * 2);
    }
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (ok(static_cast<std::size_t>(mid))) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    const auto degree = static_cast<std::size_t>(hi);
    Candidate c = build_candidate(t, degree, grid);
    JacobiAngerPoly out;
    out.t = t;
    out.delta = delta;
    out.degree = degree;
    out.sup_err = c.eval.sup_err;
    out.normalization = c.factor;
    for (double &x : c.cr) {
        x *= c.factor;
    }
    for (double &x : c.ci) {
        x *= c.factor;
    }
    out.real = ChebPoly{c.cr, c.eval.sup_err};
    out.imag = ChebPoly{c.ci, c.eval.sup_err};
    return out;
}

BlockEncoding apply_poly(const BlockEncoding &u, const ChebPoly &pr, const ChebPoly &pi) {
    const std::size_t p = std::max(pr.degree(), pi.degree());
    BlockEncoding out;
    out.system_dim = u.system_dim;
    out.scale = 1.0;
    out.err = 4.0 * static_cast<double>(p) * std::sqrt(u.err / u.scale) +
              kGridSlack * std::max(pr.sup_err, pi.sup_err) + kRoundoffSlack;
    out.tag = "poly(" + u.tag + ")";
    out.cost = u.cost.times(p + 1);
    out.cost.two_qubit_gates += (ceil_log2(static_cast<std::size_t>(
                                     std::min<std::uint64_t>(u.logical_ancilla_dim, 1ULL << 62))) +
                                 1) *
                                p;
    // Real and imaginary parts recombined by one extra two-term LCU.
    out.lcu_terms = u.lcu_terms + 2;
    out.logical_ancilla_dim = u.logical_ancilla_dim * 4;
    if (u.symbolic()) {
        out.unitary.resize(0, 0);
        out.ancilla_dim = static_cast<std::size_t>(out.logical_ancilla_dim);
        return out;
    }
    const CMatrix b = u.block();
    const double defect = hermiticity_defect(b);
    if (defect > 1e-9) {
        raise(ErrorKind::NotHermitianBlock, "block asymmetry " + std::to_string(defect));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (b + b.adjoint()));
    const Eigen::VectorXd &lam = solver.eigenvalues();
    CVector vals(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        const double x = std::clamp(lam(k), -1.0, 1.0);
        vals(k) = Complex(pr.eval(x), pi.eval(x));
    }
    const CMatrix &v = solver.eigenvectors();
    const CMatrix m = v * vals.asDiagonal() * v.adjoint();
    BlockEncoding d = dilate(m, 1.0);
    d.err = out.err;
    d.tag = out.tag;
    d.cost = out.cost;
    d.lcu_terms = out.lcu_terms;
    d.logical_ancilla_dim = out.logical_ancilla_dim;
    return d;
}

} // namespace hybridsim

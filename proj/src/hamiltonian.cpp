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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hybridsim/errors.hpp"

namespace hybridsim {

namespace {

constexpr std::uint64_t kDenseNormLimit = 1024;

std::string where(std::size_t term, std::size_t factor) {
    return "term " + std::to_string(term + 1) + " factor " + std::to_string(factor + 1);
}

double param(const TimeCoefficient &c, std::size_t idx, double fallback) {
    return idx < c.params.size() ? c.params[idx] : fallback;
}

} // namespace

std::string_view coefficient_kind_name(CoefficientKind kind) {
    switch (kind) {
    case CoefficientKind::Constant: return "constant";
    case CoefficientKind::Polynomial: return "polynomial";
    case CoefficientKind::Cosine: return "cosine";
    case CoefficientKind::Sine: return "sine";
    case CoefficientKind::ExpDecay: return "exp";
    }
    return "unknown";
}

TimeCoefficient TimeCoefficient::constant(double a) { return {CoefficientKind::Constant, {a}}; }

TimeCoefficient TimeCoefficient::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) {
        coeffs.push_back(0.0);
    }
    return {CoefficientKind::Polynomial, std::move(coeffs)};
}

TimeCoefficient TimeCoefficient::cosine(double a, double omega, double phi) {
    return {CoefficientKind::Cosine, {a, omega, phi}};
}

TimeCoefficient TimeCoefficient::sine(double a, double omega, double phi) {
    return {CoefficientKind::Sine, {a, omega, phi}};
}

TimeCoefficient TimeCoefficient::exp_decay(double a, double kappa) {
    return {CoefficientKind::ExpDecay, {a, kappa}};
}

double TimeCoefficient::value(double s) const {
    switch (kind) {
    case CoefficientKind::Constant:
        return param(*this, 0, 1.0);
    case CoefficientKind::Polynomial: {
        double acc = 0.0;
        for (auto it = params.rbegin(); it != params.rend(); ++it) {
            acc = acc * s + *it;
        }
        return acc;
    }
    case CoefficientKind::Cosine:
        return param(*this, 0, 1.0) * std::cos(param(*this, 1, 1.0) * s + param(*this, 2, 0.0));
    case CoefficientKind::Sine:
        return param(*this, 0, 1.0) * std::sin(param(*this, 1, 1.0) * s + param(*this, 2, 0.0));
    case CoefficientKind::ExpDecay:
        return param(*this, 0, 1.0) * std::exp(-param(*this, 1, 0.0) * s);
    }
    return 0.0;
}

double integrate_coefficient(const TimeCoefficient &c, double t) {
    switch (c.kind) {
    case CoefficientKind::Constant:
        return param(c, 0, 1.0) * t;
    case CoefficientKind::Polynomial: {
        double acc = 0.0;
        double tp = t;
        for (std::size_t k = 0; k < c.params.size(); ++k) {
            acc += c.params[k] * tp / static_cast<double>(k + 1);
            tp *= t;
        }
        return acc;
    }
    case CoefficientKind::Cosine: {
        const double a = param(c, 0, 1.0), w = param(c, 1, 1.0), phi = param(c, 2, 0.0);
        if (w == 0.0) {
            return a * std::cos(phi) * t;
        }
        return a / w * (std::sin(w * t + phi) - std::sin(phi));
    }
    case CoefficientKind::Sine: {
        const double a = param(c, 0, 1.0), w = param(c, 1, 1.0), phi = param(c, 2, 0.0);
        if (w == 0.0) {
            return a * std::sin(phi) * t;
        }
        return a / w * (std::cos(phi) - std::cos(w * t + phi));
    }
    case CoefficientKind::ExpDecay: {
        const double a = param(c, 0, 1.0), kappa = param(c, 1, 0.0);
        if (kappa == 0.0) {
            return a * t;
        }
        return -a * std::expm1(-kappa * t) / kappa;
    }
    }
    return 0.0;
}

std::size_t coefficient_poly_degree(const TimeCoefficient &c, double t, double tol) {
    if (c.kind == CoefficientKind::Constant) {
        return 1;
    }
    if (c.kind == CoefficientKind::Polynomial) {
        std::size_t n = c.params.size();
        while (n > 1 && c.params[n - 1] == 0.0) {
            --n;
        }
        return n;
    }
    if (t == 0.0) {
        return 0;
    }
    constexpr std::size_t kMaxDegree = 256;
    constexpr int kProbe = 201;
    for (std::size_t n = 1; n <= kMaxDegree; ++n) {
        const std::size_t npts = n + 1;
        std::vector<double> f(npts), coef(npts, 0.0);
        for (std::size_t k = 0; k < npts; ++k) {
            const double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.5) /
                                      static_cast<double>(npts));
            f[k] = integrate_coefficient(c, 0.5 * t * (x + 1.0));
        }
        for (std::size_t j = 0; j < npts; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < npts; ++k) {
                s += f[k] * std::cos(std::numbers::pi * static_cast<double>(j) *
                                     (static_cast<double>(k) + 0.5) / static_cast<double>(npts));
            }
            coef[j] = 2.0 * s / static_cast<double>(npts);
        }
        coef[0] *= 0.5;
        double worst = 0.0;
        for (int p = 0; p < kProbe; ++p) {
            const double x = -1.0 + 2.0 * p / (kProbe - 1);
            double b1 = 0.0, b2 = 0.0;
            for (std::size_t j = npts; j-- > 1;) {
                const double b0 = 2.0 * x * b1 - b2 + coef[j];
                b2 = b1;
                b1 = b0;
            }
            const double approx = x * b1 - b2 + coef[0];
            worst = std::max(worst, std::abs(approx - integrate_coefficient(c, 0.5 * t * (x + 1.0))));
        }
        if (worst <= tol) {
            return n;
        }
    }
    return kMaxDegree;
}

std::size_t TensorTerm::factor_dim() const {
    return factors.empty() ? 0 : static_cast<std::size_t>(factors.front().rows());
}

double TensorTerm::op_norm() const {
    double n = 1.0;
    for (const auto &s : spectral) {
        double m = 0.0;
        for (double l : s.eigenvalues) {
            m = std::max(m, std::abs(l));
        }
        n *= m;
    }
    return n;
}

CMatrix TensorTerm::assemble() const { return kron_all(factors); }

bool is_trivial_factor(const CMatrix &f) {
    if (f.rows() != f.cols()) {
        return false;
    }
    return max_entry_norm(f - CMatrix::Identity(f.rows(), f.cols())) < 1e-12;
}

TensorTerm make_term(std::vector<CMatrix> factors, double rank_tol) {
    TensorTerm term;
    term.factors = std::move(factors);
    term.term_rank = 1;
    for (std::size_t j = 0; j < term.factors.size(); ++j) {
        term.spectral.push_back(eig_hermitian(term.factors[j], rank_tol));
        term.term_rank *= term.spectral.back().rank;
        if (!is_trivial_factor(term.factors[j])) {
            term.nontrivial_set.push_back(j);
        }
    }
    const auto [g, gp] = compute_gamma(term);
    term.gamma = g;
    term.gamma_prime = gp;
    return term;
}

std::pair<double, double> compute_gamma(const TensorTerm &term) {
    double gamma = 1.0;
    for (const auto &s : term.spectral) {
        gamma *= s.trace_norm();
    }
    double gamma_prime = 1.0;
    for (std::size_t j : term.nontrivial_set) {
        gamma_prime *= term.spectral[j].trace_norm();
    }
    return {gamma, gamma_prime};
}

TensorFactorHamiltonian::TensorFactorHamiltonian(
    std::size_t d, std::vector<std::vector<CMatrix>> terms,
    std::optional<std::vector<TimeCoefficient>> coefficients, NormPolicy policy)
    : d_(d), coefficients_(std::move(coefficients)) {
    if (d < 2) {
        raise(ErrorKind::DimensionMismatch, "factor dimension must be >= 2");
    }
    if (terms.empty()) {
        raise(ErrorKind::DimensionMismatch, "at least one term required");
    }
    const std::size_t m = terms.front().size();
    if (m == 0) {
        raise(ErrorKind::DimensionMismatch, "at least one factor per term required");
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].size() != m) {
            raise(ErrorKind::DimensionMismatch, "term " + std::to_string(i + 1) + " has " +
                                                    std::to_string(terms[i].size()) +
                                                    " factors, expected " + std::to_string(m));
        }
        for (std::size_t j = 0; j < m; ++j) {
            const CMatrix &f = terms[i][j];
            if (f.rows() != static_cast<Eigen::Index>(d) || f.cols() != static_cast<Eigen::Index>(d)) {
                raise(ErrorKind::DimensionMismatch, where(i, j) + " is " + std::to_string(f.rows()) +
                                                        "x" + std::to_string(f.cols()));
            }
            if (!is_hermitian(f)) {
                raise(ErrorKind::NotHermitian, where(i, j));
            }
        }
    }
    if (coefficients_ && coefficients_->size() != terms.size()) {
        raise(ErrorKind::DimensionMismatch, "coefficient count differs from term count");
    }

    for (auto &factors : terms) {
        terms_.push_back(make_term(factors));
    }

    if (policy.rescale) {
        double worst = 0.0;
        for (const auto &t : terms_) {
            worst = std::max(worst, t.op_norm());
        }
        double total = 0.0;
        if (dim() <= kDenseNormLimit) {
            total = op_norm(assemble_dense(*this));
        } else {
            for (const auto &t : terms_) {
                total += t.op_norm();
            }
        }
        const double g = std::max({1.0, 2.0 * worst, 2.0 * total});
        if (g > 1.0) {
            for (auto &factors : terms) {
                std::size_t slot = 0;
                for (std::size_t j = 0; j < factors.size(); ++j) {
                    if (!is_trivial_factor(factors[j])) {
                        slot = j;
                        break;
                    }
                }
                factors[slot] /= g;
            }
            terms_.clear();
            for (auto &factors : terms) {
                terms_.push_back(make_term(factors));
            }
            global_scale_ = g;
        }
    } else if (policy.enforce) {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const double n = terms_[i].op_norm();
            if (n > 0.5 + 1e-9) {
                raise(ErrorKind::NormPremiseViolated,
                      "term " + std::to_string(i + 1) + " has norm " + std::to_string(n));
            }
        }
    }
}

const std::vector<TimeCoefficient> &TensorFactorHamiltonian::coefficients() const {
    if (!coefficients_) {
        raise(ErrorKind::CoefficientsMissing, "Hamiltonian has no time-dependent coefficients");
    }
    return *coefficients_;
}

std::size_t TensorFactorHamiltonian::max_nontrivial() const {
    std::size_t r = 0;
    for (const auto &t : terms_) {
        r = std::max(r, t.nontrivial_set.size());
    }
    return r;
}

CMatrix assemble_weighted(const TensorFactorHamiltonian &h, const std::vector<double> &weights) {
    if (weights.size() != h.K()) {
        raise(ErrorKind::DimensionMismatch, "weight count differs from term count");
    }
    const auto n = static_cast<Eigen::Index>(h.dim());
    CMatrix out = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < h.K(); ++i) {
        if (weights[i] != 0.0) {
            out += weights[i] * h.term(i).assemble();
        }
    }
    return out;
}

CMatrix assemble_dense(const TensorFactorHamiltonian &h, std::optional<double> t) {
    std::vector<double> w(h.K(), 1.0);
    if (t) {
        const auto &coeffs = h.coefficients();
        for (std::size_t i = 0; i < h.K(); ++i) {
            w[i] = coeffs[i].value(*t);
        }
    }
    return assemble_weighted(h, w);
}

CommutingCheck check_pairwise_commuting(const TensorFactorHamiltonian &h, double tol) {
    std::vector<CMatrix> dense;
    dense.reserve(h.K());
    for (const auto &t : h.terms()) {
        dense.push_back(t.assemble());
    }
    CommutingCheck out;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        for (std::size_t j = i + 1; j < dense.size(); ++j) {
            const double n = op_norm(dense[i] * dense[j] - dense[j] * dense[i]);
            if (n > out.norm) {
                out.norm = n;
                out.i = i;
                out.j = j;
            }
        }
    }
    out.commuting = out.norm <= tol;
    return out;
}

double weighted_norm_bound(const TensorFactorHamiltonian &h, const std::vector<double> &weights) {
    if (weights.size() != h.K()) {
        raise(ErrorKind::DimensionMismatch, "one weight per term required");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < h.K(); ++i) {
        total += std::abs(weights[i]) * h.term(i).op_norm();
    }
    return total;
}

} // namespace hybridsim

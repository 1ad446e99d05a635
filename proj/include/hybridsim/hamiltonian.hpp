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
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridsim/linalg.hpp"

namespace hybridsim {

enum class CoefficientKind { Constant, Polynomial, Cosine, Sine, ExpDecay };

std::string_view coefficient_kind_name(CoefficientKind kind);

/// alpha(s) for one term. Parameters per kind:
///   constant    a
///   polynomial  c0 c1 ... cn          (alpha = sum c_k s^k)
///   cosine      a omega phi           (alpha = a cos(omega s + phi))
///   sine        a omega phi           (alpha = a sin(omega s + phi))
///   exp         a kappa               (alpha = a exp(-kappa s))
struct TimeCoefficient {
    CoefficientKind kind = CoefficientKind::Constant;
    std::vector<double> params{1.0};

    static TimeCoefficient constant(double a);
    static TimeCoefficient polynomial(std::vector<double> coeffs);
    static TimeCoefficient cosine(double a = 1.0, double omega = 1.0, double phi = 0.0);
    static TimeCoefficient sine(double a = 1.0, double omega = 1.0, double phi = 0.0);
    static TimeCoefficient exp_decay(double a, double kappa);

    double value(double s) const;
};

/// beta(t) = integral of alpha over [0, t], in closed form.
double integrate_coefficient(const TimeCoefficient &c, double t);

/// Polynomial degree charged for transforming the scalar t into beta(t).
/// Exact for constant/polynomial kinds; otherwise the smallest Chebyshev
/// interpolation degree on [0, t] reaching tol.
std::size_t coefficient_poly_degree(const TimeCoefficient &c, double t, double tol);

struct TensorTerm {
    std::vector<CMatrix> factors;
    std::vector<std::size_t> nontrivial_set;
    std::vector<SpectralData> spectral;
    double gamma = 0.0;
    double gamma_prime = 1.0;
    std::uint64_t term_rank = 0;

    std::size_t num_factors() const { return factors.size(); }
    std::size_t factor_dim() const;
    double op_norm() const;
    CMatrix assemble() const;
};

bool is_trivial_factor(const CMatrix &f);

/// Builds a term and populates the derived fields (spectra, R_i, gammas, rank).
TensorTerm make_term(std::vector<CMatrix> factors, double rank_tol = kDefaultRankTol);

/// (gamma_i, gamma_i') from the stored spectral data.
std::pair<double, double> compute_gamma(const TensorTerm &term);

struct NormPolicy {
    bool enforce = true;
    bool rescale = false;
};

class TensorFactorHamiltonian {
  public:
    TensorFactorHamiltonian(std::size_t d, std::vector<std::vector<CMatrix>> terms,
                            std::optional<std::vector<TimeCoefficient>> coefficients = std::nullopt,
                            NormPolicy policy = {});

    std::size_t K() const { return terms_.size(); }
    std::size_t M() const { return terms_.front().num_factors(); }
    std::size_t d() const { return d_; }
    std::uint64_t dim() const { return ipow(d_, M()); }

    const std::vector<TensorTerm> &terms() const { return terms_; }
    const TensorTerm &term(std::size_t i) const { return terms_.at(i); }

    bool has_coefficients() const { return coefficients_.has_value(); }
    const std::vector<TimeCoefficient> &coefficients() const;

    /// Input operator = global_scale * stored operator (1 when no rescale happened).
    double global_scale() const { return global_scale_; }
    std::size_t max_nontrivial() const;

  private:
    std::size_t d_;
    std::vector<TensorTerm> terms_;
    std::optional<std::vector<TimeCoefficient>> coefficients_;
    double global_scale_ = 1.0;
};

/// sum_i H_i, or sum_i alpha_i(t) H_i when t is given.
CMatrix assemble_dense(const TensorFactorHamiltonian &h, std::optional<double> t = std::nullopt);
CMatrix assemble_weighted(const TensorFactorHamiltonian &h, const std::vector<double> &weights);

/// Triangle-inequality bound sum_i |w_i| ||H_i||; needs no dense matrix.
double weighted_norm_bound(const TensorFactorHamiltonian &h, const std::vector<double> &weights);

struct CommutingCheck {
    bool commuting = true;
    std::size_t i = 0;
    std::size_t j = 0;
    double norm = 0.0;
};

CommutingCheck check_pairwise_commuting(const TensorFactorHamiltonian &h, double tol);

/// HAMSPEC ingestion.
TensorFactorHamiltonian parse_hamiltonian(std::string_view text);
TensorFactorHamiltonian load_hamiltonian(const std::string &path);

} // namespace hybridsim

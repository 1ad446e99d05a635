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
#include <vector>

#include "hybridsim/block_encoding.hpp"

namespace hybridsim {

constexpr std::size_t kSupGridPoints = 2001;
constexpr std::size_t kDefaultDegreeCap = 10000;

/// Real polynomial in the Chebyshev basis.
struct ChebPoly {
    std::vector<double> coeffs{0.0};
    double sup_err = 0.0;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    double eval(double x) const;

    static ChebPoly zero();
    static ChebPoly identity();
};

/// Chebyshev points of the first kind on [-1, 1].
std::vector<double> chebyshev_grid(std::size_t n = kSupGridPoints);

double bessel_j(int k, double t);

/// Half-scaled truncation of exp(-i x t): real ~ cos(xt)/2, imag ~ -sin(xt)/2.
struct JacobiAngerPoly {
    ChebPoly real;
    ChebPoly imag;
    double t = 0.0;
    double delta = 0.0;
    std::size_t degree = 0;
    /// Grid sup of |real + i imag - exp(-ixt)/2|; the search guarantees 2*sup_err <= delta.
    double sup_err = 0.0;
    /// Extra factor (<= 1) applied when the truncation exceeded 1/2 in modulus.
    double normalization = 1.0;
};

/// Truncation error of the half-scaled series at a fixed degree.
double jacobi_anger_error(double t, std::size_t degree);

JacobiAngerPoly jacobi_anger(double t, double delta, std::size_t degree_cap = kDefaultDegreeCap);

/// P(A/alpha) with P = pr + i*pi, returned as a scale-1 encoding.
BlockEncoding apply_poly(const BlockEncoding &u, const ChebPoly &pr, const ChebPoly &pi);

} // namespace hybridsim

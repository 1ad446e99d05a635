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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace hybridsim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double kHermitianTol = 1e-12;
constexpr double kDefaultRankTol = 1e-10;

/// Eigenpairs of a Hermitian matrix ordered by decreasing |lambda|.
struct SpectralData {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors; // columns
    std::size_t rank = 0;

    std::size_t dim() const { return eigenvalues.size(); }
    /// Sum of |lambda_k|.
    double trace_norm() const;
};

SpectralData eig_hermitian(const CMatrix &m, double rank_tol = kDefaultRankTol);

CMatrix kron(const CMatrix &a, const CMatrix &b);
CVector kron(const CVector &a, const CVector &b);
CMatrix kron_all(const std::vector<CMatrix> &factors);

enum class TracedSide { Left, Right };

CMatrix partial_trace(const CMatrix &m, std::size_t keep_dim, std::size_t trace_dim,
                      TracedSide side);

double op_norm(const CMatrix &m);
double trace_norm(const CMatrix &m);
double max_entry_norm(const CMatrix &m);
std::size_t sparsity(const CMatrix &m, double tol = 1e-12);

double hermiticity_defect(const CMatrix &m);
bool is_hermitian(const CMatrix &m, double tol = kHermitianTol);
/// Frobenius norm of U^dagger U - I; an upper bound on the operator-norm defect.
double unitarity_defect(const CMatrix &u);

CMatrix expm_hermitian(const CMatrix &h, double t);

/// Unitary whose first column equals the unit vector x (Householder completion).
CMatrix complete_unitary(const CVector &x);

CMatrix identity(std::size_t dim);
CMatrix pauli(char name);

std::uint64_t ipow(std::uint64_t base, std::size_t exp);
std::size_t next_pow2(std::size_t n);
std::size_t ceil_log2(std::size_t n);

} // namespace hybridsim

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
#include <string>
#include <vector>

#include "hybridsim/linalg.hpp"

namespace hybridsim {

/// Largest unitary dimension that is materialized verbatim. Bigger results
/// keep the exact top-left block inside a two-block dilation.
constexpr std::size_t kMaxExplicitDim = 1024;

/// Resources charged for one application of an encoding.
struct QueryCost {
    std::uint64_t prep_queries = 0;
    std::uint64_t swap_ops = 0;
    std::uint64_t two_qubit_gates = 0;

    QueryCost &operator+=(const QueryCost &o);
    QueryCost times(std::uint64_t k) const;
    bool operator==(const QueryCost &o) const = default;
};

/// (alpha, a, eps) block encoding with ancilla-major layout: row index is
/// anc * system_dim + sys, and the encoded block is the leading
/// system_dim x system_dim corner.
struct BlockEncoding {
    CMatrix unitary; // empty for symbolic (ledger-only) encodings
    std::size_t system_dim = 1;
    std::size_t ancilla_dim = 1;
    std::uint64_t logical_ancilla_dim = 1;
    double scale = 1.0;
    double err = 0.0;
    std::string tag;
    QueryCost cost;
    std::uint64_t lcu_terms = 0;

    bool symbolic() const { return unitary.size() == 0; }
    std::size_t dim() const { return system_dim * ancilla_dim; }
    CMatrix block() const;
    CMatrix encoded() const { return scale * block(); }
};

/// Wraps a unitary that encodes itself (ancilla dimension 1).
BlockEncoding be_unitary(const CMatrix &u, const std::string &tag = "unitary");
BlockEncoding be_identity(std::size_t system_dim);
/// Unitary with a zero top-left block, encoding 0 at the given scale.
BlockEncoding be_zero(std::size_t system_dim, double scale);
BlockEncoding be_symbolic(std::size_t system_dim, std::uint64_t logical_ancilla_dim, double scale,
                          const std::string &tag);

/// Unitary [[B, sqrt(I - BB^dag)], [sqrt(I - B^dag B), -B^dag]] for a contraction B.
CMatrix dilation_unitary(const CMatrix &b);

BlockEncoding dilate(const CMatrix &a_mat, double scale);
BlockEncoding be_product(const BlockEncoding &u1, const BlockEncoding &u2);
BlockEncoding be_tensor(const std::vector<BlockEncoding> &us);
BlockEncoding be_lcu(const std::vector<BlockEncoding> &us, const std::vector<double> &weights);
/// Uniform average over a multiset given as distinct encodings with
/// multiplicities; charged as an LCU over sum(counts) terms.
BlockEncoding be_lcu_multiset(const std::vector<BlockEncoding> &us,
                              const std::vector<std::uint64_t> &counts);
BlockEncoding be_rescale(const BlockEncoding &u, double p);
BlockEncoding be_amplify(const BlockEncoding &u, double gamma, double delta, double eps);
BlockEncoding be_density_from_purification(const CMatrix &prep, std::size_t traced_dim);
/// Same as above with the purification given as a state vector (prep is its
/// Householder completion).
BlockEncoding be_density_from_state(const CVector &phi, std::size_t traced_dim);
/// Ledger-only stand-in for be_density_from_state with identical cost fields.
BlockEncoding be_density_symbolic(std::size_t system_dim, std::size_t traced_dim);
BlockEncoding be_swap_permute(const BlockEncoding &u, const std::vector<std::size_t> &perm,
                              std::size_t d);

/// Same unitary read as an encoding of target/scale * new_scale.
BlockEncoding be_relabel(const BlockEncoding &u, double new_scale);
/// -U: encodes the negated block.
BlockEncoding be_negate(const BlockEncoding &u);

std::uint64_t amplification_rounds(double gamma, double delta, double eps);
/// Minimal transposition count of a slot permutation.
std::size_t swap_count(const std::vector<std::size_t> &perm);
/// Dense matrix of the slot permutation unitary P (d^M x d^M).
CMatrix slot_permutation_matrix(const std::vector<std::size_t> &perm, std::size_t d);

} // namespace hybridsim

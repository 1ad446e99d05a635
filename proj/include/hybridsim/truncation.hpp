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

constexpr std::size_t kDefaultTailGroups = 8;

struct EnsembleMember {
    double probability = 0.0;
    CVector w;
    std::vector<std::size_t> support;
};

struct SparseEnsemble {
    std::vector<EnsembleMember> members;
    std::size_t sparsity = 0;
    double measured_trace_dist = 0.0;
    std::size_t source_dim = 0;

    std::size_t size() const { return members.size(); }
    /// sum_j p_j w_j w_j^dagger
    CMatrix average() const;
};

/// Splits v into at most groups + 1 disjoint s-sparse blocks taken in order
/// of decreasing |v_i|; amplitude beyond the last block is dropped and the
/// kept blocks renormalized. Among sparsities s' <= s the one with the
/// smallest trace distance is returned, so the result is monotone in s.
SparseEnsemble randomized_truncate(const CVector &v, std::size_t s,
                                   std::size_t groups = kDefaultTailGroups);

/// trace_norm(v v^dagger - sum_j p_j w_j w_j^dagger), computed densely.
double ensemble_trace_distance(const CVector &v, const SparseEnsemble &e);

struct AmplitudeBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// lhs = ||v - sum_j sqrt(p_j) w_j||_2 after aligning each w_j's phase with v.
AmplitudeBoundCheck check_amplitude_bound(const CVector &v, const SparseEnsemble &e);

/// Per-coordinate quantities of the magnitude argument relating the two bounds.
struct AmplitudeChain {
    double squared_mix = 0.0; // sum_i | |v_i|^2 - (sum_j sqrt(p_j)|w_ji|)^2 |
    double linear_mix = 0.0;  // sum_i | |v_i|^2 - sum_j sqrt(p_j)|w_ji| |
    double diagonal = 0.0;    // sum_i | |v_i|^2 - sum_j p_j |w_ji|^2 |
};

AmplitudeChain amplitude_chain(const CVector &v, const SparseEnsemble &e);

struct EnsemblePreparation {
    BlockEncoding encoding;
    /// Ancilla-zero projection of the encoding applied to |0>: (sum sqrt p)^-1 sum sqrt(p_j) w_j.
    CVector projected_state;
    double success_prob = 0.0;
    /// (sum_j sqrt p_j)^-2
    double formula_success_prob = 0.0;
    /// Symbolic state-preparation resources per member.
    std::size_t prep_depth = 0;
    std::size_t prep_ancillas = 0;
};

EnsemblePreparation ensemble_prepare(const SparseEnsemble &e);

} // namespace hybridsim

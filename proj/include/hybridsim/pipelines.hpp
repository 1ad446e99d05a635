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

#include "hybridsim/block_encoding.hpp"
#include "hybridsim/hamiltonian.hpp"
#include "hybridsim/ledger.hpp"
#include "hybridsim/qsvt.hpp"
#include "hybridsim/truncation.hpp"

namespace hybridsim {

enum class Approach { A1, A2, A3, TimeDependent };
enum class Backend { Dense, LedgerOnly };

std::string_view approach_name(Approach a);
Approach parse_approach(std::string_view name);

struct PipelineConfig {
    Approach approach = Approach::A1;
    double t = 1.0;
    double delta = 1e-6;
    bool use_simplification = true;
    std::optional<std::size_t> mc_samples;
    std::optional<std::uint64_t> mc_seed;
    std::optional<std::size_t> truncation_sparsity;
    std::optional<std::size_t> tail_groups;
    Backend backend = Backend::Dense;
    bool attach_oracle = true;
    /// Amplification gap and the extra error budget handed to it.
    double amp_delta = 0.1;
    /// Added to the declared error of every averaged term encoding (A2).
    double injected_block_error = 0.0;
};

void validate_config(const PipelineConfig &cfg);

struct MCSampleRecord {
    std::vector<std::size_t> eigentuple;
    int sign = 1;
    double probability = 0.0;
    std::size_t sample_index = 0;
};

struct SimplifiedTerm {
    std::vector<CMatrix> reduced;
    std::vector<std::size_t> slots;
    /// perm[packed position] = original slot; packed layout is [R_i | identities].
    std::vector<std::size_t> perm;
    double gamma_prime = 1.0;
};

SimplifiedTerm simplify_term(const TensorTerm &term);

struct TermDiagnostics {
    std::size_t term = 0;
    std::vector<std::size_t> factor_set;
    std::uint64_t leaves = 0;
    double gamma_used = 0.0;
    /// ||block - H_F/gamma_F||_o on the factor space actually encoded.
    double block_error = 0.0;
    /// ||block - H_F/gamma_F||_tr (density normalization).
    double trace_defect = 0.0;
    std::size_t swaps = 0;
    // Approach 2.
    std::size_t distinct_samples = 0;
    double s_rho_bound = 0.0;
    std::size_t deviation_sparsity = 0;
    double deviation_max_entry = 0.0;
    double entry_variance = 0.0;
    std::vector<MCSampleRecord> samples;
    // Approach 3.
    std::vector<double> factor_distances;
    std::vector<SparseEnsemble> ensembles;
    double delta = 0.0;
};

struct PipelineResult {
    CMatrix evolution_block; // empty in ledger mode
    double declared_err = 0.0;
    std::optional<double> measured_err;
    ResourceLedger ledger;
    std::vector<std::pair<std::string, double>> timings;
    BlockEncoding final_encoding;
    std::vector<TermDiagnostics> terms;
    JacobiAngerPoly poly;
    double sum_gamma = 0.0;
    /// Evolution parameter handed to the polynomial (t, or t' for the time-dependent case).
    double poly_time = 0.0;
    double aggregate_delta = 0.0;
    std::vector<double> betas;
};

PipelineResult run_approach1(const TensorFactorHamiltonian &h, const PipelineConfig &cfg);
PipelineResult run_approach2(const TensorFactorHamiltonian &h, const PipelineConfig &cfg);
PipelineResult run_approach3(const TensorFactorHamiltonian &h, const PipelineConfig &cfg);
PipelineResult run_time_dependent(const TensorFactorHamiltonian &h, const PipelineConfig &cfg);
PipelineResult run_pipeline(const TensorFactorHamiltonian &h, const PipelineConfig &cfg);

/// ||(1/N) sum_j rho_j - H_F/gamma_F||_o for one seeded draw of N eigentuples.
double mc_term_error(const TensorTerm &term, bool use_simplification, std::size_t samples,
                     std::uint64_t seed);

} // namespace hybridsim

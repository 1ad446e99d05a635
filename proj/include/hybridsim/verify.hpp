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

#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsim/pipelines.hpp"

namespace hybridsim {

/// exp(-i t sum_i H_i) by dense diagonalization.
CMatrix oracle_evolution(const TensorFactorHamiltonian &h, double t);
/// exp(-i sum_i beta_i(t) H_i) for commuting time-dependent terms.
CMatrix oracle_evolution_td(const TensorFactorHamiltonian &h, double t);
/// Picks the oracle matching cfg.approach.
CMatrix oracle_for(const TensorFactorHamiltonian &h, const PipelineConfig &cfg);

struct Comparison {
    double measured = 0.0;
    double declared = 0.0;
    bool within = false;
};

Comparison compare(const PipelineResult &r, const CMatrix &oracle);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double max_rel_residual = 0.0;
};

LinearFit fit_linear(const std::vector<double> &x, const std::vector<double> &y);
/// Least-squares slope of log y against log x.
LinearFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y);

enum class SweepParam { K, T, Delta, Samples, Sparsity };

std::string_view sweep_param_name(SweepParam p);
SweepParam parse_sweep_param(std::string_view name);

struct ScalingPoint {
    double value = 0.0;
    double measured = 0.0;
};

struct ScalingReport {
    SweepParam param = SweepParam::K;
    std::string counter;
    std::vector<ScalingPoint> points;
    std::string expected_law;
    LinearFit fit;
    bool pass = false;
    std::string verdict;

    /// Columns: param,value,counter,measured,expected_law,fit
    void write_csv(std::ostream &os) const;
};

struct SweepOptions {
    /// Seeds averaged per point for the sample-count sweep.
    std::size_t seeds = 20;
    std::uint64_t first_seed = 1;
    /// Term whose Monte Carlo error is tracked.
    std::size_t term = 0;
};

/// Builds the Hamiltonian for one sweep value (families may ignore it).
using HamiltonianFamily = std::function<TensorFactorHamiltonian(double)>;

/// Counters: any ledger counter name; the Samples sweep reports "mc_error" and
/// the Sparsity sweep "trace_distance" regardless of the name passed.
ScalingReport scaling_sweep(const HamiltonianFamily &family, SweepParam param,
                            const std::vector<double> &values, const std::string &counter,
                            const PipelineConfig &base, const SweepOptions &opts = {});

/// K two-site terms F (x) F on neighbouring sites of an open chain, with
/// F = (X + Z)/2, so every term has gamma' = 2.
TensorFactorHamiltonian chain_family(std::size_t K, std::size_t sites);

/// Transverse-field Ising chain with couplings Z/2 (x) Z/2 and fields g X/2.
TensorFactorHamiltonian tfim_chain(std::size_t sites, double g);

} // namespace hybridsim

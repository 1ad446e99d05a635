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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hybridsim {

struct LedgerCounters {
    std::uint64_t prep_unitary_queries = 0;
    std::uint64_t be_queries = 0;
    std::uint64_t swap_ops = 0;
    std::uint64_t lcu_terms = 0;
    std::uint64_t amplification_rounds = 0;
    std::uint64_t poly_degree = 0;
    std::uint64_t two_qubit_gates = 0;
    std::uint64_t ancilla_dims = 1;

    bool operator==(const LedgerCounters &o) const = default;

    /// Counter names in a fixed order.
    static const std::vector<std::string> &names();
    std::vector<std::pair<std::string, std::uint64_t>> items() const;
    /// Raises InvalidConfig on unknown names.
    std::uint64_t get(std::string_view name) const;
    /// Component-wise a <= b.
    bool dominated_by(const LedgerCounters &o) const;
};

struct StageRecord {
    std::string stage;
    LedgerCounters counters;
};

struct TermRecord {
    std::size_t term = 0;
    std::size_t nontrivial = 0;
    std::uint64_t rank = 0;
    double gamma = 0.0;
    double gamma_prime = 0.0;
    std::uint64_t prep_queries = 0;
    std::uint64_t swap_ops = 0;
    std::uint64_t leaves = 0;
};

class ResourceLedger {
  public:
    /// Records a cumulative snapshot; counters are clamped so every stage
    /// dominates the previous one.
    void record_stage(const std::string &stage, const LedgerCounters &counters);
    void add_term(const TermRecord &rec) { terms_.push_back(rec); }
    void set_meta(const std::string &key, double value) { metadata_[key] = value; }

    const LedgerCounters &totals() const { return totals_; }
    const std::vector<StageRecord> &stages() const { return stages_; }
    const std::vector<TermRecord> &terms() const { return terms_; }
    const std::map<std::string, double> &metadata() const { return metadata_; }
    bool monotone() const;

  private:
    LedgerCounters totals_;
    std::vector<StageRecord> stages_;
    std::vector<TermRecord> terms_;
    std::map<std::string, double> metadata_;
};

} // namespace hybridsim

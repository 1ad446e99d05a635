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
#include "hybridsim/ledger.hpp"

#include <algorithm>

#include "hybridsim/errors.hpp"

namespace hybridsim {

const std::vector<std::string> &LedgerCounters::names() {
    static const std::vector<std::string> n = {
        "prep_unitary_queries", "be_queries",      "swap_ops",        "lcu_terms",
        "amplification_rounds", "poly_degree",     "two_qubit_gates", "ancilla_dims",
    };
    return n;
}

std::vector<std::pair<std::string, std::uint64_t>> LedgerCounters::items() const {
    return {
        {"prep_unitary_queries", prep_unitary_queries},
        {"be_queries", be_queries},
        {"swap_ops", swap_ops},
        {"lcu_terms", lcu_terms},
        {"amplification_rounds", amplification_rounds},
        {"poly_degree", poly_degree},
        {"two_qubit_gates", two_qubit_gates},
        {"ancilla_dims", ancilla_dims},
    };
}

std::uint64_t LedgerCounters::get(std::string_view name) const {
    for (const auto &[k, v] : items()) {
        if (k == name) {
            return v;
        }
    }
    raise(ErrorKind::InvalidConfig, "unknown counter '" + std::string(name) + "'");
}

bool LedgerCounters::dominated_by(const LedgerCounters &o) const {
    const auto a = items();
    const auto b = o.items();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].second > b[i].second) {
            return false;
        }
    }
    return true;
}

void ResourceLedger::record_stage(const std::string &stage, const LedgerCounters &counters) {
    LedgerCounters c = counters;
    if (!stages_.empty()) {
        const LedgerCounters &p = stages_.back().counters;
        c.prep_unitary_queries = std::max(c.prep_unitary_queries, p.prep_unitary_queries);
        c.be_queries = std::max(c.be_queries, p.be_queries);
        c.swap_ops = std::max(c.swap_ops, p.swap_ops);
        c.lcu_terms = std::max(c.lcu_terms, p.lcu_terms);
        c.amplification_rounds = std::max(c.amplification_rounds, p.amplification_rounds);
        c.poly_degree = std::max(c.poly_degree, p.poly_degree);
        c.two_qubit_gates = std::max(c.two_qubit_gates, p.two_qubit_gates);
        c.ancilla_dims = std::max(c.ancilla_dims, p.ancilla_dims);
    }
    stages_.push_back({stage, c});
    totals_ = c;
}

bool ResourceLedger::monotone() const {
    for (std::size_t i = 1; i < stages_.size(); ++i) {
        if (!stages_[i - 1].counters.dominated_by(stages_[i].counters)) {
            return false;
        }
    }
    return true;
}

} // namespace hybridsim

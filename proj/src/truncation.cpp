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
#include "hybridsim/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hybridsim/errors.hpp"

namespace hybridsim {

namespace {

using Index = Eigen::Index;

struct Partition {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<double> masses;
    double dropped = 0.0;
};

Partition partition(const CVector &v, const std::vector<std::size_t> &order, std::size_t nonzero,
                    std::size_t s, std::size_t groups) {
    Partition part;
    std::size_t pos = 0;
    while (pos < nonzero && part.blocks.size() < groups + 1) {
        const std::size_t end = std::min(nonzero, pos + s);
        std::vector<std::size_t> blk(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                     order.begin() + static_cast<std::ptrdiff_t>(end));
        double m = 0.0;
        for (std::size_t i : blk) {
            m += std::norm(v(static_cast<Index>(i)));
        }
        std::sort(blk.begin(), blk.end());
        part.blocks.push_back(std::move(blk));
        part.masses.push_back(m);
        pos = end;
    }
    for (std::size_t k = pos; k < nonzero; ++k) {
        part.dropped += std::norm(v(static_cast<Index>(order[k])));
    }
    return part;
}

// The difference operator lives in span{w_1..w_L, dropped tail}; with
// c = (sqrt m_1, ..., sqrt m_L, sqrt m_D) it reads c c^T - diag(p, 0).
double partition_distance(const Partition &part) {
    const std::size_t l = part.blocks.size();
    const bool tail = part.dropped > 0.0;
    const auto n = static_cast<Index>(l + (tail ? 1 : 0));
    double kept = 0.0;
    for (double m : part.masses) {
        kept += m;
    }
    Eigen::VectorXd c(n);
    for (std::size_t j = 0; j < l; ++j) {
        c(static_cast<Index>(j)) = std::sqrt(part.masses[j]);
    }
    if (tail) {
        c(n - 1) = std::sqrt(part.dropped);
    }
    Eigen::MatrixXd dm = c * c.transpose();
    for (std::size_t j = 0; j < l; ++j) {
        dm(static_cast<Index>(j), static_cast<Index>(j)) -= part.masses[j] / kept;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

} // namespace

CMatrix SparseEnsemble::average() const {
    const auto d = static_cast<Index>(source_dim);
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto &m : members) {
        out += m.probability * (m.w * m.w.adjoint());
    }
    return out;
}

SparseEnsemble randomized_truncate(const CVector &v, std::size_t s, std::size_t groups) {
    const std::size_t d = static_cast<std::size_t>(v.size());
    const double nv = v.norm();
    if (std::abs(nv - 1.0) > 1e-10) {
        raise(ErrorKind::NotUnit, "||v|| = " + std::to_string(nv));
    }
    if (s < 1 || s > d) {
        raise(ErrorKind::SparsityOutOfRange,
              "s = " + std::to_string(s) + " outside [1, " + std::to_string(d) + "]");
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(v(static_cast<Index>(a))) > std::abs(v(static_cast<Index>(b)));
    });
    std::size_t nonzero = 0;
    while (nonzero < d && std::abs(v(static_cast<Index>(order[nonzero]))) > 0.0) {
        ++nonzero;
    }

    Partition best;
    double best_eps = INFINITY;
    for (std::size_t sp = 1; sp <= s; ++sp) {
        Partition part = partition(v, order, nonzero, sp, groups);
        const double eps = (part.blocks.size() == 1 && part.dropped == 0.0)
                               ? 0.0
                               : partition_distance(part);
        if (eps <= best_eps) {
            best_eps = eps;
            best = std::move(part);
        }
        if (sp >= nonzero) {
            break;
        }
    }

    SparseEnsemble out;
    out.sparsity = s;
    out.source_dim = d;
    out.measured_trace_dist = best_eps;
    double kept = 0.0;
    for (double m : best.masses) {
        kept += m;
    }
    for (std::size_t j = 0; j < best.blocks.size(); ++j) {
        EnsembleMember mem;
        mem.probability = best.masses[j] / kept;
        mem.support = best.blocks[j];
        mem.w = CVector::Zero(static_cast<Index>(d));
        const double scale = 1.0 / std::sqrt(best.masses[j]);
        for (std::size_t i : mem.support) {
            mem.w(static_cast<Index>(i)) = v(static_cast<Index>(i)) * scale;
        }
        out.members.push_back(std::move(mem));
    }
    return out;
}

double ensemble_trace_distance(const CVector &v, const SparseEnsemble &e) {
    return trace_norm(v * v.adjoint() - e.average());
}

AmplitudeBoundCheck check_amplitude_bound(const CVector &v, const SparseEnsemble &e) {
    CVector acc = CVector::Zero(v.size());
    for (const auto &m : e.members) {
        const Complex ov = m.w.dot(v);
        const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
        acc += std::sqrt(m.probability) * phase * m.w;
    }
    AmplitudeBoundCheck out;
    out.lhs = (v - acc).norm();
    out.rhs = std::sqrt(e.measured_trace_dist);
    out.holds = out.lhs <= out.rhs + 1e-9;
    return out;
}

AmplitudeChain amplitude_chain(const CVector &v, const SparseEnsemble &e) {
    AmplitudeChain out;
    for (Index i = 0; i < v.size(); ++i) {
        double lin = 0.0, diag = 0.0;
        for (const auto &m : e.members) {
            const double a = std::abs(m.w(i));
            lin += std::sqrt(m.probability) * a;
            diag += m.probability * a * a;
        }
        const double vi2 = std::norm(v(i));
        out.squared_mix += std::abs(vi2 - lin * lin);
        out.linear_mix += std::abs(vi2 - lin);
        out.diagonal += std::abs(vi2 - diag);
    }
    return out;
}

EnsemblePreparation ensemble_prepare(const SparseEnsemble &e) {
    if (e.members.empty()) {
        raise(ErrorKind::InvalidConfig, "empty ensemble");
    }
    double root_sum = 0.0;
    for (const auto &m : e.members) {
        root_sum += std::sqrt(m.probability);
    }
    std::vector<BlockEncoding> us;
    std::vector<double> weights;
    for (const auto &m : e.members) {
        BlockEncoding u;
        u.unitary = complete_unitary(m.w);
        u.system_dim = static_cast<std::size_t>(m.w.size());
        u.tag = "stateprep";
        u.cost.prep_queries = 1;
        us.push_back(std::move(u));
        weights.push_back(std::sqrt(m.probability) / root_sum);
    }
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    weights.back() += 1.0 - total;

    EnsemblePreparation out;
    out.encoding = be_lcu(us, weights);
    out.encoding.tag = "ensemble_prepare";
    out.projected_state = out.encoding.block().col(0);
    out.success_prob = out.projected_state.squaredNorm();
    out.formula_success_prob = 1.0 / (root_sum * root_sum);
    const std::size_t logn = std::max<std::size_t>(1, ceil_log2(e.source_dim));
    const std::size_t s = std::max<std::size_t>(1, e.sparsity);
    out.prep_depth = std::max<std::size_t>(1, ceil_log2(s * logn));
    out.prep_ancillas = std::max<std::size_t>(1, s * std::max<std::size_t>(1, ceil_log2(s)) * logn);
    return out;
}

} // namespace hybridsim

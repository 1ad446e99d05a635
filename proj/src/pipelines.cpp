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
#include "hybridsim/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "hybridsim/errors.hpp"
#include "hybridsim/verify.hpp"

namespace hybridsim {

namespace {

using Index = Eigen::Index;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kDefaultSamples = 1024;
constexpr std::uint64_t kDefaultSeed = 1;
// Classical diagnostics are skipped beyond this factor-space dimension.
constexpr std::size_t kDiagnosticDim = 1024;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<double> normalized(std::vector<double> w) {
    double total = 0.0;
    for (double x : w) {
        total += x;
    }
    for (double &x : w) {
        x /= total;
    }
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        s += w[i];
    }
    if (!w.empty()) {
        w.back() = std::max(0.0, 1.0 - s);
    }
    return w;
}

// The factor slots a term encoding acts on, with their nonzero eigenpairs.
struct FactorSpace {
    const TensorTerm *term = nullptr;
    std::vector<std::size_t> slots;
    std::vector<std::vector<std::size_t>> nz; // nonzero eigen indices per slot
    std::size_t d = 2;
    std::size_t dim = 1;
    double gamma = 1.0;

    std::size_t tuple_count() const {
        std::size_t n = 1;
        for (const auto &v : nz) {
            n *= v.size();
        }
        return n;
    }

    // Lexicographic decoding, first slot most significant.
    std::vector<std::size_t> tuple(std::size_t flat) const {
        std::vector<std::size_t> k(slots.size());
        for (std::size_t j = slots.size(); j-- > 0;) {
            k[j] = nz[j][flat % nz[j].size()];
            flat /= nz[j].size();
        }
        return k;
    }

    double eigen_product(const std::vector<std::size_t> &k) const {
        double lam = 1.0;
        for (std::size_t j = 0; j < slots.size(); ++j) {
            lam *= term->spectral[slots[j]].eigenvalues[k[j]];
        }
        return lam;
    }

    CVector eigenvector(std::size_t j, std::size_t k) const {
        return term->spectral[slots[j]].eigenvectors.col(static_cast<Index>(k));
    }

    CVector product_state(const std::vector<std::size_t> &k) const {
        CVector psi = CVector::Ones(1);
        for (std::size_t j = 0; j < slots.size(); ++j) {
            psi = kron(psi, eigenvector(j, k[j]));
        }
        return psi;
    }

    // Index of the eigentuple in the full d^|F| register.
    std::size_t register_index(const std::vector<std::size_t> &k) const {
        std::size_t idx = 0;
        for (std::size_t kj : k) {
            idx = idx * d + kj;
        }
        return idx;
    }

    CMatrix target() const {
        std::vector<CMatrix> fs;
        for (std::size_t s : slots) {
            fs.push_back(term->factors[s]);
        }
        if (fs.empty()) {
            return CMatrix::Identity(1, 1);
        }
        return kron_all(fs) / gamma;
    }
};

FactorSpace factor_space(const TensorTerm &term, std::size_t d, bool simplify) {
    FactorSpace f;
    f.term = &term;
    f.d = d;
    if (simplify) {
        f.slots = term.nontrivial_set;
    } else {
        for (std::size_t j = 0; j < term.num_factors(); ++j) {
            f.slots.push_back(j);
        }
    }
    for (std::size_t s : f.slots) {
        const SpectralData &sd = term.spectral[s];
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < sd.dim(); ++k) {
            if (sd.eigenvalues[k] != 0.0) {
                idx.push_back(k);
            }
        }
        f.nz.push_back(std::move(idx));
        f.gamma *= sd.trace_norm();
        f.dim *= d;
    }
    return f;
}

// Packed layout [F | rest] reached by at most |F| transpositions.
std::vector<std::size_t> packing_perm(const std::vector<std::size_t> &slots, std::size_t M) {
    std::vector<std::size_t> arr(M);
    for (std::size_t i = 0; i < M; ++i) {
        arr[i] = i;
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto at = std::find(arr.begin(), arr.end(), slots[k]);
        std::iter_swap(arr.begin() + static_cast<std::ptrdiff_t>(k), at);
    }
    return arr;
}

BlockEncoding identity_enc(std::size_t dim, Backend backend) {
    if (backend == Backend::LedgerOnly) {
        return be_symbolic(dim, 1, 1.0, "identity");
    }
    return be_identity(dim);
}

BlockEncoding density_leaf(const CVector &phi, std::size_t traced, std::size_t system,
                           Backend backend) {
    if (backend == Backend::LedgerOnly) {
        return be_density_symbolic(system, traced);
    }
    return be_density_from_state(phi, traced);
}

// Lifts a factor-space encoding to the full d^M register.
BlockEncoding embed(const BlockEncoding &enc, const FactorSpace &f, std::size_t M,
                    Backend backend, std::size_t &swaps) {
    swaps = 0;
    if (f.slots.size() == M) {
        return enc;
    }
    const std::size_t rest = static_cast<std::size_t>(ipow(f.d, M - f.slots.size()));
    BlockEncoding lifted = be_tensor({enc, identity_enc(rest, backend)});
    const std::vector<std::size_t> perm = packing_perm(f.slots, M);
    swaps = swap_count(perm);
    return be_swap_permute(lifted, perm, f.d);
}

LedgerCounters counters_of(const BlockEncoding &e) {
    LedgerCounters c;
    c.prep_unitary_queries = e.cost.prep_queries;
    c.swap_ops = e.cost.swap_ops;
    c.two_qubit_gates = e.cost.two_qubit_gates;
    c.lcu_terms = e.lcu_terms;
    c.ancilla_dims = e.logical_ancilla_dim;
    return c;
}

struct TermEncoding {
    BlockEncoding enc; // scale 1, target H_F/gamma_F on d^M
    double gamma = 0.0;
    TermDiagnostics diag;
};

// Exact sum over signed eigentuple projectors.
TermEncoding exact_term(std::size_t idx, const FactorSpace &f, Backend backend) {
    TermEncoding out;
    out.gamma = f.gamma;
    out.diag.term = idx;
    out.diag.factor_set = f.slots;
    out.diag.gamma_used = f.gamma;
    if (f.slots.empty()) {
        out.enc = identity_enc(1, backend);
        return out;
    }
    const std::size_t n = f.tuple_count();
    std::vector<BlockEncoding> leaves;
    std::vector<double> w;
    for (std::size_t x = 0; x < n; ++x) {
        const auto k = f.tuple(x);
        const double lam = f.eigen_product(k);
        BlockEncoding leaf = density_leaf(f.product_state(k), 1, f.dim, backend);
        leaves.push_back(lam < 0.0 ? be_negate(leaf) : leaf);
        w.push_back(std::abs(lam));
    }
    out.diag.leaves = n;
    out.enc = be_lcu(leaves, normalized(w));
    out.enc.tag = "term" + std::to_string(idx + 1);
    return out;
}

struct Draw {
    std::vector<std::size_t> flat;       // distinct tuples in first-seen order
    std::vector<std::uint64_t> counts;
    std::vector<MCSampleRecord> records;
};

Draw draw_samples(const FactorSpace &f, std::size_t samples, std::mt19937_64 &rng) {
    const std::size_t n = f.tuple_count();
    std::vector<double> w(n);
    for (std::size_t x = 0; x < n; ++x) {
        w[x] = std::abs(f.eigen_product(f.tuple(x)));
    }
    std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
    std::map<std::size_t, std::size_t> pos;
    Draw out;
    for (std::size_t j = 0; j < samples; ++j) {
        const std::size_t x = dist(rng);
        auto it = pos.find(x);
        if (it == pos.end()) {
            it = pos.emplace(x, out.flat.size()).first;
            out.flat.push_back(x);
            out.counts.push_back(0);
        }
        ++out.counts[it->second];
        MCSampleRecord rec;
        rec.eigentuple = f.tuple(x);
        const double lam = f.eigen_product(rec.eigentuple);
        rec.sign = lam < 0.0 ? -1 : 1;
        rec.probability = std::abs(lam) / f.gamma;
        rec.sample_index = j;
        out.records.push_back(std::move(rec));
    }
    return out;
}

CMatrix signed_projector(const FactorSpace &f, std::size_t flat) {
    const auto k = f.tuple(flat);
    const CVector psi = f.product_state(k);
    const double sign = f.eigen_product(k) < 0.0 ? -1.0 : 1.0;
    return sign * (psi * psi.adjoint());
}

CMatrix draw_average(const FactorSpace &f, const Draw &dr, std::size_t samples) {
    CMatrix avg = CMatrix::Zero(static_cast<Index>(f.dim), static_cast<Index>(f.dim));
    for (std::size_t i = 0; i < dr.flat.size(); ++i) {
        avg += (static_cast<double>(dr.counts[i]) / static_cast<double>(samples)) *
               signed_projector(f, dr.flat[i]);
    }
    return avg;
}

TermEncoding sampled_term(std::size_t idx, const FactorSpace &f,
                          std::size_t samples, std::mt19937_64 &rng, Backend backend) {
    if (f.slots.empty()) {
        return exact_term(idx, f, backend);
    }
    TermEncoding out;
    out.gamma = f.gamma;
    out.diag.term = idx;
    out.diag.factor_set = f.slots;
    out.diag.gamma_used = f.gamma;
    Draw dr = draw_samples(f, samples, rng);
    std::vector<BlockEncoding> leaves;
    for (std::size_t x : dr.flat) {
        const auto k = f.tuple(x);
        BlockEncoding leaf = density_leaf(f.product_state(k), 1, f.dim, backend);
        leaves.push_back(f.eigen_product(k) < 0.0 ? be_negate(leaf) : leaf);
    }
    out.diag.leaves = samples;
    out.diag.distinct_samples = dr.flat.size();

    // Without the dense average only the trivial bound ||avg - target|| <= 2 is known.
    double dev = 2.0;
    out.diag.block_error = dev;
    if (f.dim <= kDiagnosticDim) {
        const CMatrix target = f.target();
        const CMatrix diff = draw_average(f, dr, samples) - target;
        dev = op_norm(diff);
        out.diag.block_error = dev;
        out.diag.trace_defect = trace_norm(diff);
        out.diag.deviation_sparsity = sparsity(diff);
        out.diag.deviation_max_entry = max_entry_norm(diff);
        double bound = static_cast<double>(sparsity(target));
        for (std::size_t i = 0; i < dr.flat.size(); ++i) {
            const CVector psi = f.product_state(f.tuple(dr.flat[i]));
            std::size_t nnz = 0;
            for (Index r = 0; r < psi.size(); ++r) {
                nnz += std::abs(psi(r)) > 1e-12 ? 1 : 0;
            }
            bound += static_cast<double>(dr.counts[i] * nnz);
        }
        out.diag.s_rho_bound = bound;
        // Per-sample variance of each entry under the exact distribution.
        const std::size_t n = f.tuple_count();
        if (n * f.dim * f.dim <= 4'000'000) {
            Eigen::MatrixXd second = Eigen::MatrixXd::Zero(static_cast<Index>(f.dim),
                                                           static_cast<Index>(f.dim));
            for (std::size_t x = 0; x < n; ++x) {
                const double p = std::abs(f.eigen_product(f.tuple(x))) / f.gamma;
                second += p * signed_projector(f, x).cwiseAbs2();
            }
            out.diag.entry_variance = (second - target.cwiseAbs2()).maxCoeff();
        }
    }
    out.diag.samples = std::move(dr.records);
    out.enc = be_lcu_multiset(leaves, dr.counts);
    out.enc.err = dev;
    out.enc.tag = "term" + std::to_string(idx + 1) + "-mc";
    return out;
}

TermEncoding purified_term(std::size_t idx, const FactorSpace &f,
                           std::optional<std::size_t> sparsity_s, std::size_t groups,
                           Backend backend) {
    const std::size_t n = f.tuple_count();
    for (std::size_t x = 0; x < n; ++x) {
        const auto k = f.tuple(x);
        const double lam = f.eigen_product(k);
        if (lam < 0.0) {
            std::ostringstream os;
            os << "term " << idx + 1 << " eigentuple (";
            for (std::size_t j = 0; j < k.size(); ++j) {
                os << (j ? "," : "") << k[j];
            }
            os << ") has product " << lam;
            raise(ErrorKind::NegativeEigenvalueProduct, os.str());
        }
    }
    if (f.slots.empty()) {
        return exact_term(idx, f, backend);
    }
    TermEncoding out;
    out.gamma = f.gamma;
    out.diag.term = idx;
    out.diag.factor_set = f.slots;
    out.diag.gamma_used = f.gamma;
    out.diag.leaves = 1;

    const std::size_t reg1 = f.dim;
    if (!sparsity_s) {
        // |Phi> = sum_k sqrt(lambda_k/gamma) |k> |psi_k>
        const std::size_t total = reg1 * f.dim;
        CVector phi;
        if (backend == Backend::Dense) {
            phi = CVector::Zero(static_cast<Index>(total));
            for (std::size_t x = 0; x < n; ++x) {
                const auto k = f.tuple(x);
                const double amp = std::sqrt(f.eigen_product(k) / f.gamma);
                phi.segment(static_cast<Index>(f.register_index(k) * f.dim),
                            static_cast<Index>(f.dim)) = amp * f.product_state(k);
            }
        }
        out.enc = density_leaf(phi, reg1, f.dim, backend);
        out.enc.tag = "term" + std::to_string(idx + 1) + "-purified";
        return out;
    }

    // Per slot and nonzero eigenvector, a sparse ensemble.
    const std::size_t s = std::min(*sparsity_s, f.d);
    std::vector<std::map<std::size_t, SparseEnsemble>> ens(f.slots.size());
    std::vector<std::size_t> lens(f.slots.size(), 1);
    for (std::size_t j = 0; j < f.slots.size(); ++j) {
        for (std::size_t k : f.nz[j]) {
            SparseEnsemble e = randomized_truncate(f.eigenvector(j, k), s, groups);
            out.diag.factor_distances.push_back(e.measured_trace_dist);
            out.diag.delta = std::max(out.diag.delta, e.measured_trace_dist);
            lens[j] = std::max(lens[j], e.size());
            out.diag.ensembles.push_back(e);
            ens[j].emplace(k, std::move(e));
        }
    }
    std::size_t reg2 = 1;
    for (std::size_t l : lens) {
        reg2 *= l;
    }
    const std::size_t traced = reg1 * reg2;

    // Trace distance is subadditive over tensor factors; refined below when dense.
    out.diag.block_error = std::min(2.0, static_cast<double>(f.slots.size()) * out.diag.delta);
    out.diag.trace_defect = out.diag.block_error;
    if (f.dim <= kDiagnosticDim) {
        CMatrix rho = CMatrix::Zero(static_cast<Index>(f.dim), static_cast<Index>(f.dim));
        for (std::size_t x = 0; x < n; ++x) {
            const auto k = f.tuple(x);
            CMatrix part = CMatrix::Identity(1, 1);
            for (std::size_t j = 0; j < k.size(); ++j) {
                part = kron(part, ens[j].at(k[j]).average());
            }
            rho += (f.eigen_product(k) / f.gamma) * part;
        }
        const CMatrix diff = rho - f.target();
        out.diag.block_error = op_norm(diff);
        out.diag.trace_defect = trace_norm(diff);
    }

    CVector phi;
    if (backend == Backend::Dense) {
        phi = CVector::Zero(static_cast<Index>(traced * f.dim));
        for (std::size_t x = 0; x < n; ++x) {
            const auto k = f.tuple(x);
            const double amp = std::sqrt(f.eigen_product(k) / f.gamma);
            const std::size_t r1 = f.register_index(k);
            // Odometer over member indices l_j < lens[j].
            std::vector<std::size_t> l(k.size(), 0);
            for (std::size_t r2 = 0; r2 < reg2; ++r2) {
                std::size_t rem = r2;
                for (std::size_t j = k.size(); j-- > 0;) {
                    l[j] = rem % lens[j];
                    rem /= lens[j];
                }
                double p = 1.0;
                CVector w = CVector::Ones(1);
                for (std::size_t j = 0; j < k.size() && p > 0.0; ++j) {
                    const SparseEnsemble &e = ens[j].at(k[j]);
                    if (l[j] >= e.size()) {
                        p = 0.0;
                        break;
                    }
                    p *= e.members[l[j]].probability;
                    w = kron(w, e.members[l[j]].w);
                }
                if (p == 0.0) {
                    continue;
                }
                const std::size_t base = (r1 * reg2 + r2) * f.dim;
                phi.segment(static_cast<Index>(base), static_cast<Index>(f.dim)) =
                    amp * std::sqrt(p) * w;
            }
        }
    }
    out.enc = density_leaf(phi, traced, f.dim, backend);
    out.enc.err = out.diag.block_error;
    out.enc.tag = "term" + std::to_string(idx + 1) + "-truncated";
    return out;
}

enum class Mode { Exact, Sampled, Purified };

struct Assembled {
    BlockEncoding enc; // scale 1 encoding of H / sum_gamma
    double sum_gamma = 0.0;
};

// Builds every term encoding, lifts it to d^M and combines with an LCU.
Assembled assemble_terms(const TensorFactorHamiltonian &h, const PipelineConfig &cfg, Mode mode,
                         PipelineResult &res, const std::vector<double> *coef_bounds) {
    const std::size_t M = h.M();
    std::mt19937_64 rng(cfg.mc_seed.value_or(kDefaultSeed));
    const std::size_t samples = cfg.mc_samples.value_or(kDefaultSamples);
    const std::size_t groups = cfg.tail_groups.value_or(kDefaultTailGroups);

    std::vector<BlockEncoding> lifted;
    std::vector<double> weights;
    LedgerCounters stage;
    for (std::size_t i = 0; i < h.K(); ++i) {
        const TensorTerm &term = h.term(i);
        const FactorSpace f = factor_space(term, h.d(), cfg.use_simplification);
        if (f.tuple_count() == 0 || f.gamma == 0.0) {
            res.terms.push_back({});
            res.terms.back().term = i;
            continue;
        }
        TermEncoding te;
        switch (mode) {
        case Mode::Exact:
            te = exact_term(i, f, cfg.backend);
            break;
        case Mode::Sampled:
            te = sampled_term(i, f, samples, rng, cfg.backend);
            break;
        case Mode::Purified:
            te = purified_term(i, f, cfg.truncation_sparsity, groups, cfg.backend);
            break;
        }
        te.enc.err += cfg.injected_block_error;
        std::size_t swaps = 0;
        BlockEncoding full = embed(te.enc, f, M, cfg.backend, swaps);
        te.diag.swaps = swaps;

        double weight = te.gamma;
        if (coef_bounds) {
            // Time-dependent: tensor with a 1x1 encoding of beta_i / b_i.
            const double beta = res.betas[i];
            const double b = (*coef_bounds)[i];
            BlockEncoding coef = dilate(CMatrix::Constant(1, 1, Complex(beta)), b);
            coef.scale = 1.0;
            coef.tag = "beta" + std::to_string(i + 1);
            full = be_tensor({coef, full});
            weight *= b;
        }

        TermRecord rec;
        rec.term = i;
        rec.nontrivial = term.nontrivial_set.size();
        rec.rank = term.term_rank;
        rec.gamma = term.gamma;
        rec.gamma_prime = term.gamma_prime;
        rec.prep_queries = full.cost.prep_queries;
        rec.swap_ops = full.cost.swap_ops;
        rec.leaves = te.diag.leaves;
        res.ledger.add_term(rec);

        stage.prep_unitary_queries += full.cost.prep_queries;
        stage.swap_ops += full.cost.swap_ops;
        stage.two_qubit_gates += full.cost.two_qubit_gates;
        stage.lcu_terms += full.lcu_terms;
        stage.ancilla_dims = std::max(stage.ancilla_dims, full.logical_ancilla_dim);

        res.aggregate_delta = std::max(res.aggregate_delta, te.diag.delta);
        res.terms.push_back(std::move(te.diag));
        lifted.push_back(std::move(full));
        weights.push_back(weight);
    }
    res.ledger.record_stage("terms", stage);

    Assembled out;
    const std::size_t dim = static_cast<std::size_t>(h.dim());
    if (lifted.empty()) {
        out.enc = cfg.backend == Backend::Dense ? be_zero(dim, 1.0)
                                                : be_symbolic(dim, 2, 1.0, "zero");
        out.sum_gamma = 1.0;
        return out;
    }
    for (double w : weights) {
        out.sum_gamma += w;
    }
    out.enc = be_lcu(lifted, normalized(weights));
    res.ledger.record_stage("lcu", counters_of(out.enc));
    return out;
}

// Turns an encoding with the given scale into a scale-1 encoding of the same target.
BlockEncoding normalize_scale(const BlockEncoding &u, const PipelineConfig &cfg,
                              std::uint64_t &rounds) {
    rounds = 0;
    const double scale = u.scale;
    if (scale > 1.0 + 1e-12) {
        const double eps = cfg.delta / 10.0;
        rounds = amplification_rounds(scale, cfg.amp_delta, eps);
        return be_amplify(u, scale, cfg.amp_delta, eps);
    }
    if (scale < 1.0 - 1e-12) {
        return be_relabel(be_rescale(u, 1.0 / scale), 1.0);
    }
    BlockEncoding out = u;
    out.scale = 1.0;
    return out;
}

// Smallest tau >= 1 with ||H|| / tau inside the amplification gap.
double time_scale(double norm_bound, const PipelineConfig &cfg) {
    return std::max(1.0, norm_bound / (1.0 - cfg.amp_delta) * (1.0 + 1e-9));
}

// Amplification, polynomial and bookkeeping shared by every approach.
void finish(const TensorFactorHamiltonian &h, const PipelineConfig &cfg, BlockEncoding h_enc,
            double poly_time, PipelineResult &res, Clock::time_point t0) {
    std::uint64_t rounds = 0;
    auto tn = Clock::now();
    BlockEncoding unit = normalize_scale(h_enc, cfg, rounds);
    LedgerCounters c = counters_of(unit);
    c.amplification_rounds = rounds;
    res.ledger.record_stage("normalize", c);
    res.timings.emplace_back("normalize", ms_since(tn));

    auto tp = Clock::now();
    res.poly = jacobi_anger(poly_time, cfg.delta);
    res.poly_time = poly_time;
    BlockEncoding fin = apply_poly(unit, res.poly.real, res.poly.imag);
    fin.tag = "evolution";
    res.timings.emplace_back("poly", ms_since(tp));

    c = counters_of(fin);
    c.amplification_rounds = rounds;
    c.poly_degree = res.poly.degree;
    c.be_queries = (res.poly.degree + 1) * std::max<std::uint64_t>(1, rounds);
    res.ledger.record_stage("poly", c);
    res.ledger.set_meta("sum_gamma", res.sum_gamma);
    res.ledger.set_meta("poly_time", poly_time);
    res.ledger.set_meta("delta", cfg.delta);
    res.ledger.set_meta("global_scale", h.global_scale());
    res.ledger.set_meta("jacobi_anger_sup", res.poly.sup_err);

    res.declared_err = 2.0 * fin.err;
    if (cfg.backend == Backend::Dense) {
        res.evolution_block = 2.0 * fin.block();
        if (cfg.attach_oracle) {
            auto to = Clock::now();
            const CMatrix oracle = oracle_for(h, cfg);
            res.measured_err = op_norm(res.evolution_block - oracle);
            res.timings.emplace_back("oracle", ms_since(to));
        }
    }
    res.final_encoding = std::move(fin);
    res.timings.emplace_back("total", ms_since(t0));
}

PipelineResult run_static(const TensorFactorHamiltonian &h, const PipelineConfig &cfg, Mode mode) {
    validate_config(cfg);
    const auto t0 = Clock::now();
    PipelineResult res;
    Assembled a = assemble_terms(h, cfg, mode, res, nullptr);
    res.sum_gamma = a.sum_gamma;
    res.timings.emplace_back("terms", ms_since(t0));
    // Amplify to H / tau rather than H so the block stays inside the amplifier's gap.
    double norm_bound = weighted_norm_bound(h, std::vector<double>(h.K(), 1.0));
    for (const auto &d : res.terms) {
        // Sampled or truncated terms may overshoot ||H_i|| by their block error.
        norm_bound += d.gamma_used * d.block_error;
    }
    const double tau = time_scale(norm_bound, cfg);
    res.ledger.set_meta("tau", tau);
    BlockEncoding h_enc = be_relabel(a.enc, a.sum_gamma / tau);
    finish(h, cfg, std::move(h_enc), cfg.t * tau, res, t0);
    return res;
}

} // namespace

std::string_view approach_name(Approach a) {
    switch (a) {
    case Approach::A1:
        return "a1";
    case Approach::A2:
        return "a2";
    case Approach::A3:
        return "a3";
    case Approach::TimeDependent:
        return "td";
    }
    return "?";
}

Approach parse_approach(std::string_view name) {
    if (name == "a1") {
        return Approach::A1;
    }
    if (name == "a2") {
        return Approach::A2;
    }
    if (name == "a3") {
        return Approach::A3;
    }
    if (name == "td") {
        return Approach::TimeDependent;
    }
    raise(ErrorKind::InvalidConfig, "unknown approach '" + std::string(name) + "'");
}

void validate_config(const PipelineConfig &cfg) {
    if (!std::isfinite(cfg.t)) {
        raise(ErrorKind::InvalidConfig, "t must be finite");
    }
    if (!(cfg.delta > 0.0 && cfg.delta < 0.5)) {
        raise(ErrorKind::InvalidConfig, "delta must lie in (0, 1/2)");
    }
    if (!(cfg.amp_delta > 0.0 && cfg.amp_delta < 1.0)) {
        raise(ErrorKind::InvalidConfig, "amplification gap must lie in (0, 1)");
    }
    if (cfg.mc_samples && *cfg.mc_samples == 0) {
        raise(ErrorKind::InvalidConfig, "samples must be positive");
    }
    if (cfg.truncation_sparsity && *cfg.truncation_sparsity == 0) {
        raise(ErrorKind::SparsityOutOfRange, "sparsity must be at least 1");
    }
    if (!(cfg.injected_block_error >= 0.0)) {
        raise(ErrorKind::InvalidConfig, "injected error must be non-negative");
    }
}

SimplifiedTerm simplify_term(const TensorTerm &term) {
    SimplifiedTerm out;
    for (std::size_t s : term.nontrivial_set) {
        out.reduced.push_back(term.factors[s]);
        out.slots.push_back(s);
    }
    out.perm = packing_perm(term.nontrivial_set, term.num_factors());
    out.gamma_prime = term.gamma_prime;
    return out;
}

PipelineResult run_approach1(const TensorFactorHamiltonian &h, const PipelineConfig &cfg) {
    return run_static(h, cfg, Mode::Exact);
}

PipelineResult run_approach2(const TensorFactorHamiltonian &h, const PipelineConfig &cfg) {
    PipelineResult r = run_static(h, cfg, Mode::Sampled);
    r.ledger.set_meta("mc_samples", static_cast<double>(cfg.mc_samples.value_or(kDefaultSamples)));
    r.ledger.set_meta("mc_seed", static_cast<double>(cfg.mc_seed.value_or(kDefaultSeed)));
    return r;
}

PipelineResult run_approach3(const TensorFactorHamiltonian &h, const PipelineConfig &cfg) {
    PipelineResult r = run_static(h, cfg, Mode::Purified);
    r.ledger.set_meta("aggregate_delta", r.aggregate_delta);
    if (cfg.truncation_sparsity) {
        r.ledger.set_meta("sparsity", static_cast<double>(*cfg.truncation_sparsity));
    }
    return r;
}

PipelineResult run_time_dependent(const TensorFactorHamiltonian &h, const PipelineConfig &cfg) {
    validate_config(cfg);
    const auto &coeffs = h.coefficients();
    const CommutingCheck cc = check_pairwise_commuting(h, 1e-9);
    if (!cc.commuting) {
        std::ostringstream os;
        os << "terms " << cc.i + 1 << " and " << cc.j + 1 << ": ||[H_i, H_j]|| = " << cc.norm;
        raise(ErrorKind::NotCommuting, os.str());
    }
    const auto t0 = Clock::now();
    PipelineResult res;
    std::vector<double> bounds;
    std::uint64_t beta_queries = 0;
    for (std::size_t i = 0; i < h.K(); ++i) {
        const double beta = integrate_coefficient(coeffs[i], cfg.t);
        res.betas.push_back(beta);
        bounds.push_back(std::max(1.0, std::abs(beta)));
        const std::size_t deg = coefficient_poly_degree(coeffs[i], cfg.t, cfg.delta / 10.0);
        beta_queries += deg;
        res.ledger.set_meta("beta_degree_" + std::to_string(i + 1), static_cast<double>(deg));
    }
    res.ledger.set_meta("beta_queries", static_cast<double>(beta_queries));

    Assembled a = assemble_terms(h, cfg, Mode::Exact, res, &bounds);
    res.timings.emplace_back("terms", ms_since(t0));
    // Block is B / S with B = sum beta_i H_i; pick tau so that ||B||/tau fits the amplifier.
    const double tau = time_scale(weighted_norm_bound(h, res.betas), cfg);
    res.sum_gamma = a.sum_gamma;
    res.ledger.set_meta("tau", tau);
    BlockEncoding h_enc = be_relabel(a.enc, a.sum_gamma / tau);
    finish(h, cfg, std::move(h_enc), tau, res, t0);
    return res;
}

PipelineResult run_pipeline(const TensorFactorHamiltonian &h, const PipelineConfig &cfg) {
    switch (cfg.approach) {
    case Approach::A1:
        return run_approach1(h, cfg);
    case Approach::A2:
        return run_approach2(h, cfg);
    case Approach::A3:
        return run_approach3(h, cfg);
    case Approach::TimeDependent:
        return run_time_dependent(h, cfg);
    }
    raise(ErrorKind::InvalidConfig, "unknown approach");
}

double mc_term_error(const TensorTerm &term, bool use_simplification, std::size_t samples,
                     std::uint64_t seed) {
    if (samples == 0) {
        raise(ErrorKind::InvalidConfig, "samples must be positive");
    }
    const std::size_t d = term.factor_dim();
    const FactorSpace f = factor_space(term, d, use_simplification);
    if (f.slots.empty() || f.tuple_count() == 0) {
        return 0.0;
    }
    std::mt19937_64 rng(seed);
    const Draw dr = draw_samples(f, samples, rng);
    return op_norm(draw_average(f, dr, samples) - f.target());
}

} // namespace hybridsim

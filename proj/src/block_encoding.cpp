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
#include "hybridsim/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hybridsim/errors.hpp"

namespace hybridsim {

namespace {

using Index = Eigen::Index;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::size_t clamp_dim(std::uint64_t v) {
    return static_cast<std::size_t>(std::min<std::uint64_t>(v, std::numeric_limits<std::size_t>::max()));
}

void set_compact(BlockEncoding &out, const CMatrix &block) {
    out.unitary = dilation_unitary(block);
    out.ancilla_dim = 2;
}

void set_symbolic(BlockEncoding &out) {
    out.unitary.resize(0, 0);
    out.ancilla_dim = clamp_dim(out.logical_ancilla_dim);
}

// Embed an (a*s)-dim unitary as U (+) I on (big_a*s) dims.
CMatrix pad_ancilla(const BlockEncoding &u, std::size_t big_a) {
    const auto n = static_cast<Index>(u.dim());
    const auto big = static_cast<Index>(big_a * u.system_dim);
    if (big == n) {
        return u.unitary;
    }
    CMatrix out = CMatrix::Identity(big, big);
    out.topLeftCorner(n, n) = u.unitary;
    return out;
}

// Digit maps for slot permutations: y_{perm[p]} = x_p, slot 0 most significant.
std::vector<std::size_t> slot_index_map(const std::vector<std::size_t> &perm, std::size_t d) {
    const std::size_t m = perm.size();
    const std::size_t n = static_cast<std::size_t>(ipow(d, m));
    std::vector<std::size_t> map(n);
    std::vector<std::size_t> digits(m), out_digits(m);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t r = x;
        for (std::size_t p = m; p-- > 0;) {
            digits[p] = r % d;
            r /= d;
        }
        for (std::size_t p = 0; p < m; ++p) {
            out_digits[perm[p]] = digits[p];
        }
        std::size_t y = 0;
        for (std::size_t p = 0; p < m; ++p) {
            y = y * d + out_digits[p];
        }
        map[x] = y;
    }
    return map;
}

void check_same_system(const std::vector<BlockEncoding> &us) {
    for (const auto &u : us) {
        if (u.system_dim != us.front().system_dim) {
            raise(ErrorKind::DimensionMismatch,
                  "system dims " + std::to_string(us.front().system_dim) + " and " +
                      std::to_string(u.system_dim));
        }
    }
}

} // namespace

QueryCost &QueryCost::operator+=(const QueryCost &o) {
    prep_queries += o.prep_queries;
    swap_ops += o.swap_ops;
    two_qubit_gates += o.two_qubit_gates;
    return *this;
}

QueryCost QueryCost::times(std::uint64_t k) const {
    return {sat_mul(prep_queries, k), sat_mul(swap_ops, k), sat_mul(two_qubit_gates, k)};
}

CMatrix BlockEncoding::block() const {
    if (symbolic()) {
        raise(ErrorKind::InvalidConfig, "symbolic encoding '" + tag + "' has no matrix");
    }
    const auto s = static_cast<Index>(system_dim);
    return unitary.topLeftCorner(s, s);
}

BlockEncoding be_unitary(const CMatrix &u, const std::string &tag) {
    if (u.rows() != u.cols()) {
        raise(ErrorKind::NotSquare, tag);
    }
    if (unitarity_defect(u) > 1e-9) {
        raise(ErrorKind::NotUnitary, tag);
    }
    BlockEncoding out;
    out.unitary = u;
    out.system_dim = static_cast<std::size_t>(u.rows());
    out.tag = tag;
    return out;
}

BlockEncoding be_identity(std::size_t system_dim) {
    BlockEncoding out;
    out.unitary = identity(system_dim);
    out.system_dim = system_dim;
    out.tag = "identity";
    return out;
}

BlockEncoding be_zero(std::size_t system_dim, double scale) {
    BlockEncoding out = dilate(CMatrix::Zero(static_cast<Index>(system_dim),
                                             static_cast<Index>(system_dim)),
                               1.0);
    out.scale = scale;
    out.tag = "zero";
    return out;
}

BlockEncoding be_symbolic(std::size_t system_dim, std::uint64_t logical_ancilla_dim, double scale,
                          const std::string &tag) {
    BlockEncoding out;
    out.system_dim = system_dim;
    out.logical_ancilla_dim = logical_ancilla_dim;
    out.scale = scale;
    out.tag = tag;
    set_symbolic(out);
    return out;
}

CMatrix dilation_unitary(const CMatrix &b) {
    const Index n = b.rows();
    CMatrix wmat, vmat;
    Eigen::VectorXd sv;
    if (n <= 16) {
        Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        wmat = svd.matrixU();
        vmat = svd.matrixV();
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<CMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        wmat = svd.matrixU();
        vmat = svd.matrixV();
        sv = svd.singularValues();
    }
    Eigen::VectorXd c(n);
    for (Index k = 0; k < n; ++k) {
        const double s = std::min(sv(k), 1.0);
        c(k) = std::sqrt(std::max(0.0, 1.0 - s * s));
    }
    CMatrix u(2 * n, 2 * n);
    u.topLeftCorner(n, n) = b;
    u.topRightCorner(n, n) = wmat * c.asDiagonal() * wmat.adjoint();
    u.bottomLeftCorner(n, n) = vmat * c.asDiagonal() * vmat.adjoint();
    u.bottomRightCorner(n, n) = -b.adjoint();
    return u;
}

BlockEncoding dilate(const CMatrix &a_mat, double scale) {
    if (a_mat.rows() != a_mat.cols()) {
        raise(ErrorKind::NotSquare, "dilate");
    }
    if (!(scale > 0.0)) {
        raise(ErrorKind::NormExceedsScale, "scale must be positive");
    }
    const CMatrix b = a_mat / scale;
    const double nb = op_norm(b);
    if (nb > 1.0 + 1e-9) {
        raise(ErrorKind::NormExceedsScale, "||A/alpha|| = " + std::to_string(nb));
    }
    BlockEncoding out;
    out.system_dim = static_cast<std::size_t>(a_mat.rows());
    out.logical_ancilla_dim = 2;
    out.scale = scale;
    out.tag = "dilate";
    set_compact(out, b);
    return out;
}

BlockEncoding be_product(const BlockEncoding &u1, const BlockEncoding &u2) {
    if (u1.system_dim != u2.system_dim) {
        raise(ErrorKind::DimensionMismatch, "be_product system dims");
    }
    BlockEncoding out;
    out.system_dim = u1.system_dim;
    out.scale = u1.scale * u2.scale;
    out.err = u1.scale * u2.err + u2.scale * u1.err;
    out.tag = "product(" + u1.tag + "," + u2.tag + ")";
    out.cost = u1.cost;
    out.cost += u2.cost;
    out.lcu_terms = u1.lcu_terms + u2.lcu_terms;
    out.logical_ancilla_dim = sat_mul(u1.logical_ancilla_dim, u2.logical_ancilla_dim);
    if (u1.symbolic() || u2.symbolic()) {
        set_symbolic(out);
        return out;
    }
    const std::size_t a1 = u1.ancilla_dim, a2 = u2.ancilla_dim, s = u1.system_dim;
    if (a1 * a2 * s > kMaxExplicitDim) {
        set_compact(out, u1.block() * u2.block());
        return out;
    }
    const auto n = static_cast<Index>(a1 * a2 * s);
    const auto sd = static_cast<Index>(s);
    CMatrix e1 = CMatrix::Zero(n, n), e2 = CMatrix::Zero(n, n);
    // Layout (a1, a2, s).
    for (Index x1 = 0; x1 < static_cast<Index>(a1); ++x1) {
        for (Index y1 = 0; y1 < static_cast<Index>(a1); ++y1) {
            for (Index x2 = 0; x2 < static_cast<Index>(a2); ++x2) {
                const Index r = (x1 * static_cast<Index>(a2) + x2) * sd;
                const Index c = (y1 * static_cast<Index>(a2) + x2) * sd;
                e1.block(r, c, sd, sd) = u1.unitary.block(x1 * sd, y1 * sd, sd, sd);
            }
        }
    }
    for (Index x1 = 0; x1 < static_cast<Index>(a1); ++x1) {
        for (Index x2 = 0; x2 < static_cast<Index>(a2); ++x2) {
            for (Index y2 = 0; y2 < static_cast<Index>(a2); ++y2) {
                const Index r = (x1 * static_cast<Index>(a2) + x2) * sd;
                const Index c = (x1 * static_cast<Index>(a2) + y2) * sd;
                e2.block(r, c, sd, sd) = u2.unitary.block(x2 * sd, y2 * sd, sd, sd);
            }
        }
    }
    out.unitary = e1 * e2;
    out.ancilla_dim = a1 * a2;
    return out;
}

BlockEncoding be_tensor(const std::vector<BlockEncoding> &us) {
    if (us.empty()) {
        raise(ErrorKind::DimensionMismatch, "be_tensor of empty list");
    }
    BlockEncoding out;
    out.scale = 1.0;
    out.system_dim = 1;
    out.logical_ancilla_dim = 1;
    out.tag = "tensor(";
    bool any_symbolic = false;
    std::size_t anc = 1;
    for (const auto &u : us) {
        out.scale *= u.scale;
        out.system_dim *= u.system_dim;
        out.logical_ancilla_dim = sat_mul(out.logical_ancilla_dim, u.logical_ancilla_dim);
        out.cost += u.cost;
        out.lcu_terms += u.lcu_terms;
        out.tag += u.tag + (&u == &us.back() ? ")" : ",");
        any_symbolic = any_symbolic || u.symbolic();
        anc *= u.ancilla_dim;
    }
    for (std::size_t i = 0; i < us.size(); ++i) {
        double others = 1.0;
        for (std::size_t j = 0; j < us.size(); ++j) {
            if (j != i) {
                others *= us[j].scale;
            }
        }
        out.err += us[i].err * others;
    }
    if (any_symbolic) {
        set_symbolic(out);
        return out;
    }
    if (anc * out.system_dim > kMaxExplicitDim) {
        CMatrix b = CMatrix::Identity(1, 1);
        for (const auto &u : us) {
            b = kron(b, u.block());
        }
        set_compact(out, b);
        return out;
    }
    CMatrix k = CMatrix::Identity(1, 1);
    for (const auto &u : us) {
        k = kron(k, u.unitary);
    }
    // Source layout (a1,s1,a2,s2,...), target layout (a1,a2,...,s1,s2,...).
    const std::size_t n = anc * out.system_dim;
    const std::size_t m = us.size();
    std::vector<std::size_t> src(n);
    std::vector<std::size_t> adig(m), sdig(m);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t r = t % out.system_dim;
        for (std::size_t i = m; i-- > 0;) {
            sdig[i] = r % us[i].system_dim;
            r /= us[i].system_dim;
        }
        r = t / out.system_dim;
        for (std::size_t i = m; i-- > 0;) {
            adig[i] = r % us[i].ancilla_dim;
            r /= us[i].ancilla_dim;
        }
        std::size_t idx = 0;
        for (std::size_t i = 0; i < m; ++i) {
            idx = idx * us[i].dim() + adig[i] * us[i].system_dim + sdig[i];
        }
        src[t] = idx;
    }
    const auto nn = static_cast<Index>(n);
    out.unitary.resize(nn, nn);
    for (Index c = 0; c < nn; ++c) {
        for (Index r = 0; r < nn; ++r) {
            out.unitary(r, c) = k(static_cast<Index>(src[static_cast<std::size_t>(r)]),
                                  static_cast<Index>(src[static_cast<std::size_t>(c)]));
        }
    }
    out.ancilla_dim = anc;
    return out;
}

BlockEncoding be_lcu(const std::vector<BlockEncoding> &us, const std::vector<double> &weights) {
    if (us.empty() || us.size() != weights.size()) {
        raise(ErrorKind::DimensionMismatch, "be_lcu needs one weight per encoding");
    }
    check_same_system(us);
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            raise(ErrorKind::WeightsNotNormalized, "negative weight " + std::to_string(w));
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        raise(ErrorKind::WeightsNotNormalized, "weights sum to " + std::to_string(total));
    }
    const double alpha = us.front().scale;
    for (const auto &u : us) {
        if (std::abs(u.scale - alpha) > 1e-12 * std::max(1.0, alpha)) {
            raise(ErrorKind::MixedScales,
                  "scales " + std::to_string(alpha) + " and " + std::to_string(u.scale));
        }
    }

    const std::size_t m = us.size();
    const std::size_t sel = next_pow2(m);
    BlockEncoding out;
    out.system_dim = us.front().system_dim;
    out.scale = alpha;
    out.tag = "lcu[" + std::to_string(m) + "]";
    out.lcu_terms = m;
    std::uint64_t max_logical = 1;
    bool any_symbolic = false;
    std::size_t big_a = 1;
    for (std::size_t i = 0; i < m; ++i) {
        out.err += weights[i] * us[i].err;
        out.cost += us[i].cost;
        out.lcu_terms += us[i].lcu_terms;
        max_logical = std::max(max_logical, us[i].logical_ancilla_dim);
        any_symbolic = any_symbolic || us[i].symbolic();
        big_a = std::max(big_a, us[i].ancilla_dim);
    }
    // Prepare and unprepare on ceil(log2 m) qubits.
    out.cost.two_qubit_gates += 2 * m;
    out.logical_ancilla_dim = sat_mul(sel, max_logical);
    if (any_symbolic) {
        set_symbolic(out);
        return out;
    }
    const std::size_t s = out.system_dim;
    if (sel * big_a * s > kMaxExplicitDim) {
        CMatrix b = CMatrix::Zero(static_cast<Index>(s), static_cast<Index>(s));
        for (std::size_t i = 0; i < m; ++i) {
            b += weights[i] * us[i].block();
        }
        set_compact(out, b);
        return out;
    }

    CVector amp = CVector::Zero(static_cast<Index>(sel));
    for (std::size_t i = 0; i < m; ++i) {
        amp(static_cast<Index>(i)) = std::sqrt(weights[i]);
    }
    const CMatrix prep = complete_unitary(amp);
    std::vector<CMatrix> padded;
    padded.reserve(m);
    for (const auto &u : us) {
        padded.push_back(pad_ancilla(u, big_a));
    }
    const auto blk = static_cast<Index>(big_a * s);
    const auto n = static_cast<Index>(sel) * blk;
    out.unitary = CMatrix::Zero(n, n);
    const CMatrix eye = CMatrix::Identity(blk, blk);
    for (Index x = 0; x < static_cast<Index>(sel); ++x) {
        for (Index y = 0; y < static_cast<Index>(sel); ++y) {
            auto target = out.unitary.block(x * blk, y * blk, blk, blk);
            Complex rest = (x == y) ? Complex(1.0) : Complex(0.0);
            for (std::size_t i = 0; i < m; ++i) {
                const Complex c = std::conj(prep(static_cast<Index>(i), x)) * prep(static_cast<Index>(i), y);
                rest -= c;
                if (std::abs(c) != 0.0) {
                    target += c * padded[i];
                }
            }
            if (std::abs(rest) > 0.0) {
                target += rest * eye;
            }
        }
    }
    out.ancilla_dim = sel * big_a;
    return out;
}

BlockEncoding be_lcu_multiset(const std::vector<BlockEncoding> &us,
                              const std::vector<std::uint64_t> &counts) {
    if (us.empty() || us.size() != counts.size()) {
        raise(ErrorKind::DimensionMismatch, "be_lcu_multiset needs one count per encoding");
    }
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    if (total == 0) {
        raise(ErrorKind::WeightsNotNormalized, "empty multiset");
    }
    std::vector<double> w;
    for (auto c : counts) {
        w.push_back(static_cast<double>(c) / static_cast<double>(total));
    }
    double s = 0.0;
    for (double x : w) {
        s += x;
    }
    w.back() += 1.0 - s;
    BlockEncoding out = be_lcu(us, w);
    out.cost = QueryCost{};
    out.lcu_terms = total;
    std::uint64_t max_logical = 1;
    for (std::size_t i = 0; i < us.size(); ++i) {
        out.cost += us[i].cost.times(counts[i]);
        out.lcu_terms += us[i].lcu_terms * counts[i];
        max_logical = std::max(max_logical, us[i].logical_ancilla_dim);
    }
    out.cost.two_qubit_gates += 2 * total;
    out.logical_ancilla_dim = sat_mul(next_pow2(static_cast<std::size_t>(total)), max_logical);
    out.tag = "average[" + std::to_string(total) + "]";
    return out;
}

BlockEncoding be_rescale(const BlockEncoding &u, double p) {
    if (!(p > 1.0)) {
        raise(ErrorKind::InvalidFactor, "rescale factor must exceed 1, got " + std::to_string(p));
    }
    BlockEncoding zero = be_zero(u.system_dim, u.scale);
    if (u.symbolic()) {
        zero = be_symbolic(u.system_dim, 2, u.scale, "zero");
    }
    BlockEncoding out = be_lcu({u, zero}, {1.0 / p, 1.0 - 1.0 / p});
    out.tag = "rescale(" + u.tag + ")";
    return out;
}

std::uint64_t amplification_rounds(double gamma, double delta, double eps) {
    return static_cast<std::uint64_t>(std::ceil(gamma / delta * std::log(gamma / eps)));
}

BlockEncoding be_amplify(const BlockEncoding &u, double gamma, double delta, double eps) {
    if (!(gamma > 1.0)) {
        raise(ErrorKind::InvalidFactor, "amplification factor must exceed 1");
    }
    if (!(delta > 0.0 && delta < 1.0) || !(eps > 0.0 && eps < 1.0)) {
        raise(ErrorKind::InvalidFactor, "amplification needs delta, eps in (0,1)");
    }
    const std::uint64_t m = amplification_rounds(gamma, delta, eps);
    BlockEncoding out;
    out.system_dim = u.system_dim;
    out.scale = 1.0;
    out.err = gamma * u.err / u.scale;
    out.tag = "amplify(" + u.tag + ")";
    out.cost = u.cost.times(m);
    out.cost.two_qubit_gates += 2 * m * (ceil_log2(clamp_dim(u.logical_ancilla_dim)) + 1);
    out.lcu_terms = u.lcu_terms;
    out.logical_ancilla_dim = sat_mul(u.logical_ancilla_dim, 2);
    if (u.symbolic()) {
        set_symbolic(out);
        return out;
    }
    const CMatrix b = gamma * u.block();
    const double nb = op_norm(b);
    if (nb > 1.0 - delta + 1e-12) {
        raise(ErrorKind::AmplificationOverflow,
              "gamma*||block|| = " + std::to_string(nb) + " > 1 - delta = " +
                  std::to_string(1.0 - delta));
    }
    set_compact(out, b);
    return out;
}

namespace {

BlockEncoding density_from_unitary(const CMatrix &prep, std::size_t traced_dim) {
    const std::size_t n = static_cast<std::size_t>(prep.rows());
    const std::size_t s = n / traced_dim;
    BlockEncoding out;
    out.system_dim = s;
    out.scale = 1.0;
    out.tag = "density";
    out.cost.prep_queries = 2;
    out.cost.two_qubit_gates = 3 * ceil_log2(s);
    out.logical_ancilla_dim = n;
    const auto sd = static_cast<Index>(s);
    const auto ad = static_cast<Index>(traced_dim);
    if (n * s > kMaxExplicitDim) {
        CMatrix rho = CMatrix::Zero(sd, sd);
        for (Index a = 0; a < ad; ++a) {
            const auto seg = prep.col(0).segment(a * sd, sd);
            rho += seg * seg.adjoint();
        }
        set_compact(out, rho);
        return out;
    }
    // W[(x,e),(y,c)] = sum_a conj(U[(a,c),x]) U[(a,e),y].
    const auto nn = static_cast<Index>(n);
    std::vector<CMatrix> rows(s, CMatrix(ad, nn));
    for (Index e = 0; e < sd; ++e) {
        for (Index a = 0; a < ad; ++a) {
            rows[static_cast<std::size_t>(e)].row(a) = prep.row(a * sd + e);
        }
    }
    out.unitary.resize(nn * sd, nn * sd);
    for (Index e = 0; e < sd; ++e) {
        for (Index c = 0; c < sd; ++c) {
            const CMatrix blk = rows[static_cast<std::size_t>(c)].adjoint() *
                                rows[static_cast<std::size_t>(e)];
            for (Index x = 0; x < nn; ++x) {
                for (Index y = 0; y < nn; ++y) {
                    out.unitary(x * sd + e, y * sd + c) = blk(x, y);
                }
            }
        }
    }
    out.ancilla_dim = n;
    return out;
}

} // namespace

BlockEncoding be_density_from_purification(const CMatrix &prep, std::size_t traced_dim) {
    if (prep.rows() != prep.cols()) {
        raise(ErrorKind::NotSquare, "purification unitary");
    }
    if (traced_dim == 0 || static_cast<std::size_t>(prep.rows()) % traced_dim != 0) {
        raise(ErrorKind::DimensionMismatch, "traced dimension does not divide prep dimension");
    }
    const double defect = unitarity_defect(prep);
    if (defect > 1e-9) {
        raise(ErrorKind::NotUnitary, "prep defect " + std::to_string(defect));
    }
    return density_from_unitary(prep, traced_dim);
}

BlockEncoding be_density_from_state(const CVector &phi, std::size_t traced_dim) {
    if (traced_dim == 0 || static_cast<std::size_t>(phi.size()) % traced_dim != 0) {
        raise(ErrorKind::DimensionMismatch, "traced dimension does not divide state dimension");
    }
    const std::size_t n = static_cast<std::size_t>(phi.size());
    const std::size_t s = n / traced_dim;
    if (n * s > kMaxExplicitDim) {
        // Only column 0 is read on the compact path.
        CMatrix col(phi.size(), 1);
        col.col(0) = phi;
        return density_from_unitary(col, traced_dim);
    }
    return density_from_unitary(complete_unitary(phi), traced_dim);
}

BlockEncoding be_density_symbolic(std::size_t system_dim, std::size_t traced_dim) {
    BlockEncoding out = be_symbolic(system_dim, sat_mul(system_dim, traced_dim), 1.0, "density");
    out.cost.prep_queries = 2;
    out.cost.two_qubit_gates = 3 * ceil_log2(system_dim);
    return out;
}

std::size_t swap_count(const std::vector<std::size_t> &perm) {
    std::vector<bool> seen(perm.size(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
        }
    }
    return perm.size() - cycles;
}

CMatrix slot_permutation_matrix(const std::vector<std::size_t> &perm, std::size_t d) {
    const auto map = slot_index_map(perm, d);
    const auto n = static_cast<Index>(map.size());
    CMatrix p = CMatrix::Zero(n, n);
    for (std::size_t x = 0; x < map.size(); ++x) {
        p(static_cast<Index>(map[x]), static_cast<Index>(x)) = 1.0;
    }
    return p;
}

BlockEncoding be_swap_permute(const BlockEncoding &u, const std::vector<std::size_t> &perm,
                              std::size_t d) {
    std::vector<bool> hit(perm.size(), false);
    for (std::size_t p : perm) {
        if (p >= perm.size() || hit[p]) {
            raise(ErrorKind::BadPermutation, "not a permutation of the factor slots");
        }
        hit[p] = true;
    }
    if (d < 2 || ipow(d, perm.size()) != u.system_dim) {
        raise(ErrorKind::BadPermutation, "system dim is not d^M");
    }
    const std::size_t swaps = swap_count(perm);
    BlockEncoding out = u;
    out.tag = "swap(" + u.tag + ")";
    out.cost.swap_ops += swaps;
    out.cost.two_qubit_gates += 3 * swaps * ceil_log2(d);
    if (u.symbolic() || swaps == 0) {
        return out;
    }
    const auto map = slot_index_map(perm, d);
    const std::size_t s = u.system_dim;
    const std::size_t n = u.dim();
    std::vector<Index> to(n);
    for (std::size_t i = 0; i < n; ++i) {
        to[i] = static_cast<Index>((i / s) * s + map[i % s]);
    }
    const auto nn = static_cast<Index>(n);
    for (Index c = 0; c < nn; ++c) {
        for (Index r = 0; r < nn; ++r) {
            out.unitary(to[static_cast<std::size_t>(r)], to[static_cast<std::size_t>(c)]) =
                u.unitary(r, c);
        }
    }
    return out;
}

BlockEncoding be_relabel(const BlockEncoding &u, double new_scale) {
    BlockEncoding out = u;
    out.err = u.err * new_scale / u.scale;
    out.scale = new_scale;
    return out;
}

BlockEncoding be_negate(const BlockEncoding &u) {
    BlockEncoding out = u;
    if (!u.symbolic()) {
        out.unitary = -u.unitary;
    }
    out.tag = "neg(" + u.tag + ")";
    return out;
}

} // namespace hybridsim

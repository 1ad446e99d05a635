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
#include "hybridsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hybridsim/errors.hpp"

namespace hybridsim {

namespace {

void require_square(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        raise(ErrorKind::NotSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

Eigen::VectorXd singular_values(const CMatrix &m) {
    if (m.size() == 0) {
        return Eigen::VectorXd();
    }
    if (m.rows() <= 16 && m.cols() <= 16) {
        return Eigen::JacobiSVD<CMatrix>(m).singularValues();
    }
    return Eigen::BDCSVD<CMatrix>(m).singularValues();
}

} // namespace

double SpectralData::trace_norm() const {
    double s = 0.0;
    for (double l : eigenvalues) {
        s += std::abs(l);
    }
    return s;
}

SpectralData eig_hermitian(const CMatrix &m, double rank_tol) {
    require_square(m);
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTol) {
        raise(ErrorKind::NotHermitian, "max |m - m^dagger| = " + std::to_string(defect));
    }
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    const Eigen::VectorXd &vals = solver.eigenvalues();
    const auto n = static_cast<std::size_t>(vals.size());

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(vals[a]);
        const double mb = std::abs(vals[b]);
        if (ma != mb) {
            return ma > mb;
        }
        return vals[a] > vals[b];
    });

    SpectralData out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double largest = n > 0 ? std::abs(vals[order[0]]) : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double lam = vals[order[k]];
        if (largest == 0.0 || std::abs(lam) < rank_tol * largest) {
            lam = 0.0;
        } else {
            ++out.rank;
        }
        out.eigenvalues[k] = lam;
        out.eigenvectors.col(static_cast<Eigen::Index>(k)) =
            solver.eigenvectors().col(static_cast<Eigen::Index>(order[k]));
    }
    return out;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

CMatrix kron_all(const std::vector<CMatrix> &factors) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (const auto &f : factors) {
        out = kron(out, f);
    }
    return out;
}

CMatrix partial_trace(const CMatrix &m, std::size_t keep_dim, std::size_t trace_dim,
                      TracedSide side) {
    const auto keep = static_cast<Eigen::Index>(keep_dim);
    const auto tr = static_cast<Eigen::Index>(trace_dim);
    if (m.rows() != m.cols() || m.rows() != keep * tr) {
        raise(ErrorKind::DimensionMismatch,
              "partial_trace of " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                  " with keep=" + std::to_string(keep_dim) +
                  " trace=" + std::to_string(trace_dim));
    }
    CMatrix out = CMatrix::Zero(keep, keep);
    if (side == TracedSide::Left) {
        for (Eigen::Index a = 0; a < tr; ++a) {
            out += m.block(a * keep, a * keep, keep, keep);
        }
    } else {
        for (Eigen::Index i = 0; i < keep; ++i) {
            for (Eigen::Index j = 0; j < keep; ++j) {
                Complex s = 0.0;
                for (Eigen::Index b = 0; b < tr; ++b) {
                    s += m(i * tr + b, j * tr + b);
                }
                out(i, j) = s;
            }
        }
    }
    return out;
}

double op_norm(const CMatrix &m) {
    const Eigen::VectorXd sv = singular_values(m);
    return sv.size() == 0 ? 0.0 : sv.maxCoeff();
}

double trace_norm(const CMatrix &m) {
    const Eigen::VectorXd sv = singular_values(m);
    return sv.sum();
}

double max_entry_norm(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::size_t sparsity(const CMatrix &m, double tol) {
    std::size_t best = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::size_t c = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            c += std::abs(m(i, j)) > tol ? 1 : 0;
        }
        best = std::max(best, c);
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        std::size_t c = 0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            c += std::abs(m(i, j)) > tol ? 1 : 0;
        }
        best = std::max(best, c);
    }
    return best;
}

double hermiticity_defect(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    return max_entry_norm(m - m.adjoint());
}

bool is_hermitian(const CMatrix &m, double tol) { return hermiticity_defect(m) <= tol; }

double unitarity_defect(const CMatrix &u) {
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    const CMatrix g = u.adjoint() * u;
    return (g - CMatrix::Identity(u.rows(), u.cols())).norm();
}

CMatrix expm_hermitian(const CMatrix &h, double t) {
    require_square(h);
    const double defect = hermiticity_defect(h);
    if (defect > kHermitianTol) {
        raise(ErrorKind::NotHermitian, "max |h - h^dagger| = " + std::to_string(defect));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()));
    const Eigen::VectorXd &vals = solver.eigenvalues();
    CVector phases(vals.size());
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, -vals(k) * t));
    }
    const CMatrix &v = solver.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

CMatrix complete_unitary(const CVector &x) {
    const Eigen::Index n = x.size();
    const double phi = std::abs(x(0)) > 0.0 ? std::arg(x(0)) : 0.0;
    const Complex ph = std::polar(1.0, phi);
    CVector u = -x;
    u(0) += ph;
    const double nu2 = u.squaredNorm();
    CMatrix out = CMatrix::Identity(n, n);
    if (nu2 > 1e-30) {
        out -= (2.0 / nu2) * (u * u.adjoint());
    }
    out.col(0) *= ph;
    return out;
}

CMatrix identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return CMatrix::Identity(n, n);
}

CMatrix pauli(char name) {
    CMatrix p(2, 2);
    switch (name) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: raise(ErrorKind::ParseError, std::string("unknown Pauli '") + name + "'");
    }
    return p;
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

std::size_t ceil_log2(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

} // namespace hybridsim

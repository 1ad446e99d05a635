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
#include "hybridsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "hybridsim/errors.hpp"

namespace hybridsim {

CMatrix oracle_evolution(const TensorFactorHamiltonian &h, double t) {
    return expm_hermitian(assemble_dense(h), t);
}

CMatrix oracle_evolution_td(const TensorFactorHamiltonian &h, double t) {
    const auto &coeffs = h.coefficients();
    std::vector<double> betas;
    for (const auto &c : coeffs) {
        betas.push_back(integrate_coefficient(c, t));
    }
    return expm_hermitian(assemble_weighted(h, betas), 1.0);
}

CMatrix oracle_for(const TensorFactorHamiltonian &h, const PipelineConfig &cfg) {
    if (cfg.approach == Approach::TimeDependent) {
        return oracle_evolution_td(h, cfg.t);
    }
    return oracle_evolution(h, cfg.t);
}

Comparison compare(const PipelineResult &r, const CMatrix &oracle) {
    if (r.evolution_block.size() == 0) {
        raise(ErrorKind::InvalidConfig, "no dense evolution block (ledger-only run)");
    }
    if (r.evolution_block.rows() != oracle.rows() || r.evolution_block.cols() != oracle.cols()) {
        raise(ErrorKind::DimensionMismatch, "oracle and evolution block differ in shape");
    }
    Comparison c;
    c.measured = op_norm(r.evolution_block - oracle);
    c.declared = r.declared_err;
    c.within = c.measured <= c.declared;
    return c;
}

LinearFit fit_linear(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        raise(ErrorKind::InvalidConfig, "fit needs at least two points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    const double den = n * sxx - sx * sx;
    f.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    f.intercept = (sy - f.slope * sx) / n;
    const double mean = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = f.intercept + f.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
        if (y[i] != 0.0) {
            f.max_rel_residual = std::max(f.max_rel_residual, std::abs(y[i] - pred) / std::abs(y[i]));
        }
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

LinearFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) {
            raise(ErrorKind::InvalidConfig, "log-log fit needs positive data");
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return fit_linear(lx, ly);
}

std::string_view sweep_param_name(SweepParam p) {
    switch (p) {
    case SweepParam::K:
        return "K";
    case SweepParam::T:
        return "t";
    case SweepParam::Delta:
        return "delta";
    case SweepParam::Samples:
        return "samples";
    case SweepParam::Sparsity:
        return "sparsity";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
    for (SweepParam p : {SweepParam::K, SweepParam::T, SweepParam::Delta, SweepParam::Samples,
                         SweepParam::Sparsity}) {
        if (sweep_param_name(p) == name) {
            return p;
        }
    }
    raise(ErrorKind::InvalidConfig, "unknown sweep parameter '" + std::string(name) + "'");
}

void ScalingReport::write_csv(std::ostream &os) const {
    std::ostringstream fit_s;
    fit_s << std::setprecision(6) << "slope=" << fit.slope << ";intercept=" << fit.intercept
          << ";r2=" << fit.r2 << ";max_rel_residual=" << fit.max_rel_residual
          << ";verdict=" << (pass ? "pass" : "fail");
    os << "param,value,counter,measured,expected_law,fit\n";
    for (const auto &p : points) {
        os << sweep_param_name(param) << ',' << std::setprecision(10) << p.value << ','
           << counter << ',' << p.measured << ',' << expected_law << ',' << fit_s.str() << '\n';
    }
}

ScalingReport scaling_sweep(const HamiltonianFamily &family, SweepParam param,
                            const std::vector<double> &values, const std::string &counter,
                            const PipelineConfig &base, const SweepOptions &opts) {
    if (values.size() < 2) {
        raise(ErrorKind::InvalidConfig, "a sweep needs at least two values");
    }
    ScalingReport rep;
    rep.param = param;
    rep.counter = counter;
    std::vector<double> xs, ys;
    for (double v : values) {
        PipelineConfig cfg = base;
        cfg.attach_oracle = false;
        double measured = 0.0;
        switch (param) {
        case SweepParam::K:
        case SweepParam::T:
        case SweepParam::Delta: {
            if (param == SweepParam::T) {
                cfg.t = v;
            } else if (param == SweepParam::Delta) {
                cfg.delta = v;
            }
            const PipelineResult r = run_pipeline(family(v), cfg);
            measured = static_cast<double>(r.ledger.totals().get(counter));
            break;
        }
        case SweepParam::Samples: {
            rep.counter = "mc_error";
            const TensorFactorHamiltonian h = family(v);
            const auto n = static_cast<std::size_t>(v);
            double acc = 0.0;
            for (std::size_t s = 0; s < opts.seeds; ++s) {
                acc += mc_term_error(h.term(opts.term), base.use_simplification, n,
                                     opts.first_seed + s);
            }
            measured = acc / static_cast<double>(opts.seeds);
            break;
        }
        case SweepParam::Sparsity: {
            rep.counter = "trace_distance";
            cfg.approach = Approach::A3;
            cfg.truncation_sparsity = static_cast<std::size_t>(v);
            const PipelineResult r = run_pipeline(family(v), cfg);
            measured = r.aggregate_delta;
            break;
        }
        }
        rep.points.push_back({v, measured});
        xs.push_back(v);
        ys.push_back(measured);
    }

    switch (param) {
    case SweepParam::K:
        rep.expected_law = "K^2";
        rep.fit = fit_loglog(xs, ys);
        rep.pass = std::abs(rep.fit.slope - 2.0) <= 0.5;
        break;
    case SweepParam::T:
        rep.expected_law = "a+b*t";
        rep.fit = fit_linear(xs, ys);
        rep.pass = rep.fit.slope > 0.0 && rep.fit.max_rel_residual <= 0.2;
        break;
    case SweepParam::Delta: {
        rep.expected_law = "a+b*log(1/delta)";
        std::vector<double> lx;
        for (double x : xs) {
            lx.push_back(std::log(1.0 / x));
        }
        rep.fit = fit_linear(lx, ys);
        rep.pass = rep.fit.slope > 0.0 && rep.fit.max_rel_residual <= 0.2;
        break;
    }
    case SweepParam::Samples:
        rep.expected_law = "N^-1/2";
        rep.fit = fit_loglog(xs, ys);
        rep.pass = rep.fit.slope >= -0.6 && rep.fit.slope <= -0.4;
        break;
    case SweepParam::Sparsity: {
        rep.expected_law = "non-increasing";
        rep.fit = fit_linear(xs, ys);
        rep.pass = true;
        for (std::size_t i = 1; i < ys.size(); ++i) {
            if (ys[i] > ys[i - 1] + 1e-12) {
                rep.pass = false;
            }
        }
        break;
    }
    }
    std::ostringstream v;
    v << (rep.pass ? "PASS" : "FAIL") << ": " << sweep_param_name(param) << " vs " << rep.counter
      << ", law " << rep.expected_law << ", slope " << rep.fit.slope << ", max rel residual "
      << rep.fit.max_rel_residual;
    rep.verdict = v.str();
    return rep;
}

TensorFactorHamiltonian chain_family(std::size_t K, std::size_t sites) {
    if (K == 0 || K + 1 > sites) {
        raise(ErrorKind::InvalidConfig, "chain needs 1 <= K <= sites - 1");
    }
    const CMatrix f = 0.5 * (pauli('X') + pauli('Z'));
    std::vector<std::vector<CMatrix>> terms;
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<CMatrix> fs(sites, identity(2));
        fs[k] = f;
        fs[k + 1] = f;
        terms.push_back(std::move(fs));
    }
    return TensorFactorHamiltonian(2, std::move(terms));
}

TensorFactorHamiltonian tfim_chain(std::size_t sites, double g) {
    if (sites < 2) {
        raise(ErrorKind::InvalidConfig, "chain needs at least two sites");
    }
    std::vector<std::vector<CMatrix>> terms;
    for (std::size_t k = 0; k + 1 < sites; ++k) {
        std::vector<CMatrix> fs(sites, identity(2));
        fs[k] = 0.5 * pauli('Z');
        fs[k + 1] = 0.5 * pauli('Z');
        terms.push_back(std::move(fs));
    }
    for (std::size_t k = 0; k < sites; ++k) {
        std::vector<CMatrix> fs(sites, identity(2));
        fs[k] = 0.5 * g * pauli('X');
        terms.push_back(std::move(fs));
    }
    return TensorFactorHamiltonian(2, std::move(terms), std::nullopt, NormPolicy{true, true});
}

} // namespace hybridsim

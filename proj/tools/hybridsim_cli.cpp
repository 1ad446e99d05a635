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
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hybridsim/errors.hpp"
#include "hybridsim/pipelines.hpp"
#include "hybridsim/truncation.hpp"
#include "hybridsim/verify.hpp"

namespace fs = std::filesystem;
using namespace hybridsim;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerdict = 1;

std::ofstream open_out(const std::string &dir, const std::string &name) {
    fs::create_directories(dir);
    std::ofstream os(fs::path(dir) / name);
    if (!os) {
        raise(ErrorKind::InvalidConfig, "cannot write " + (fs::path(dir) / name).string());
    }
    return os;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

double stage_ms(const PipelineResult &r, const std::string &stage) {
    for (const auto &[k, v] : r.timings) {
        if (k == stage) {
            return v;
        }
    }
    return 0.0;
}

struct SimulateArgs {
    std::string input;
    std::string approach = "a1";
    double t = 1.0;
    double delta = 1e-6;
    std::size_t samples = 1024;
    std::uint64_t seed = 1;
    std::size_t sparsity = 0;
    std::size_t groups = kDefaultTailGroups;
    bool no_simplify = false;
    bool ledger_only = false;
    std::string oracle = "on";
    std::string out = "out";
};

PipelineConfig make_config(const SimulateArgs &a) {
    PipelineConfig cfg;
    cfg.approach = parse_approach(a.approach);
    cfg.t = a.t;
    cfg.delta = a.delta;
    cfg.use_simplification = !a.no_simplify;
    cfg.mc_samples = a.samples;
    cfg.mc_seed = a.seed;
    if (a.sparsity > 0) {
        cfg.truncation_sparsity = a.sparsity;
    }
    cfg.tail_groups = a.groups;
    cfg.backend = a.ledger_only ? Backend::LedgerOnly : Backend::Dense;
    cfg.attach_oracle = a.oracle == "on" && !a.ledger_only;
    return cfg;
}

void write_report(const SimulateArgs &a, const TensorFactorHamiltonian &h,
                  const PipelineConfig &cfg, const PipelineResult &r) {
    std::ofstream os = open_out(a.out, "report.csv");
    os << "# seed=" << a.seed << " samples=" << a.samples << " sparsity=" << a.sparsity
       << " groups=" << a.groups << " simplify=" << (cfg.use_simplification ? 1 : 0)
       << " backend=" << (a.ledger_only ? "ledger" : "dense") << '\n';
    os << "approach,K,M,d,|R|,t,delta,declared_err,measured_err";
    for (const auto &n : LedgerCounters::names()) {
        os << ',' << n;
    }
    os << ",wall_ms\n";
    os << a.approach << ',' << h.K() << ',' << h.M() << ',' << h.d() << ',' << h.max_nontrivial()
       << ',' << fmt(cfg.t) << ',' << fmt(cfg.delta) << ',' << fmt(r.declared_err) << ','
       << (r.measured_err ? fmt(*r.measured_err) : "");
    for (const auto &[k, v] : r.ledger.totals().items()) {
        os << ',' << v;
    }
    os << ',' << fmt(stage_ms(r, "total")) << '\n';

    std::ofstream sm = open_out(a.out, "summary.txt");
    sm << "approach " << a.approach << "\n";
    sm << "t " << fmt(cfg.t) << "\ndelta " << fmt(cfg.delta) << "\nseed " << a.seed << "\n";
    sm << "sum_gamma " << fmt(r.sum_gamma) << "\npoly_time " << fmt(r.poly_time) << "\n";
    sm << "poly_degree " << r.poly.degree << "\n";
    sm << "declared_err " << fmt(r.declared_err) << "\n";
    if (r.measured_err) {
        sm << "measured_err " << fmt(*r.measured_err) << "\n";
        sm << "within_declared " << (*r.measured_err <= r.declared_err ? "yes" : "no") << "\n";
    }
    if (cfg.approach == Approach::A3) {
        sm << "aggregate_delta " << fmt(r.aggregate_delta) << "\n";
    }
    for (const auto &[k, v] : r.ledger.totals().items()) {
        sm << "counter." << k << ' ' << v << "\n";
    }
    for (const auto &st : r.ledger.stages()) {
        sm << "stage " << st.stage;
        for (const auto &[k, v] : st.counters.items()) {
            sm << ' ' << k << '=' << v;
        }
        sm << "\n";
    }
    for (const auto &t : r.ledger.terms()) {
        sm << "term " << t.term + 1 << " |R|=" << t.nontrivial << " rank=" << t.rank
           << " gamma=" << fmt(t.gamma) << " gamma'=" << fmt(t.gamma_prime)
           << " prep=" << t.prep_queries << " swaps=" << t.swap_ops << " leaves=" << t.leaves
           << "\n";
    }
    for (const auto &[k, v] : r.ledger.metadata()) {
        sm << "meta." << k << ' ' << fmt(v) << "\n";
    }
}

int run_simulate(const SimulateArgs &a) {
    const TensorFactorHamiltonian h = load_hamiltonian(a.input);
    const PipelineConfig cfg = make_config(a);
    const PipelineResult r = run_pipeline(h, cfg);
    write_report(a, h, cfg, r);
    std::cout << "declared_err " << fmt(r.declared_err);
    if (r.measured_err) {
        std::cout << " measured_err " << fmt(*r.measured_err);
    }
    std::cout << "\nwrote " << (fs::path(a.out) / "report.csv").string() << "\n";
    return 0;
}

struct SweepArgs {
    std::string family = "chain";
    std::string input;
    std::size_t sites = 9;
    std::string param = "K";
    std::vector<double> values;
    std::string counter = "prep_unitary_queries";
    SimulateArgs base;
    std::size_t seeds = 20;
};

int run_sweep(SweepArgs a) {
    HamiltonianFamily family;
    if (a.family == "chain") {
        const std::size_t sites = a.sites;
        const bool by_k = a.param == "K";
        family = [sites, by_k](double v) {
            return chain_family(by_k ? static_cast<std::size_t>(v) : sites - 1, sites);
        };
    } else if (a.family == "tfim") {
        const std::size_t sites = a.sites;
        family = [sites](double) { return tfim_chain(sites, 1.0); };
    } else if (a.family == "file") {
        if (a.input.empty()) {
            raise(ErrorKind::InvalidConfig, "--family file needs --input");
        }
        const TensorFactorHamiltonian h = load_hamiltonian(a.input);
        family = [h](double) { return h; };
    } else {
        raise(ErrorKind::InvalidConfig, "unknown family '" + a.family + "'");
    }
    PipelineConfig cfg = make_config(a.base);
    cfg.backend = Backend::LedgerOnly;
    SweepOptions opts;
    opts.seeds = a.seeds;
    opts.first_seed = a.base.seed;
    const ScalingReport rep =
        scaling_sweep(family, parse_sweep_param(a.param), a.values, a.counter, cfg, opts);
    std::ofstream os = open_out(a.base.out, "scaling.csv");
    rep.write_csv(os);
    std::ofstream sm = open_out(a.base.out, "summary.txt");
    sm << rep.verdict << "\n";
    std::cout << rep.verdict << "\n";
    return rep.pass ? 0 : kExitVerdict;
}

struct TruncateArgs {
    std::string vector_file;
    std::size_t sparsity = 1;
    std::size_t groups = kDefaultTailGroups;
    std::string out = "out";
};

CVector load_vector(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorKind::ParseError, "cannot open " + path);
    }
    std::vector<Complex> vals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        if (!(ls >> re)) {
            continue;
        }
        if (!(ls >> im)) {
            im = 0.0;
        }
        vals.emplace_back(re, im);
    }
    if (vals.empty()) {
        raise(ErrorKind::ParseError, path + ": no amplitudes");
    }
    CVector v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = vals[i];
    }
    return v;
}

int run_truncate(const TruncateArgs &a) {
    const CVector v = load_vector(a.vector_file);
    const SparseEnsemble e = randomized_truncate(v, a.sparsity, a.groups);
    const AmplitudeBoundCheck chk = check_amplitude_bound(v, e);
    const EnsemblePreparation prep = ensemble_prepare(e);
    std::ofstream os = open_out(a.out, "ensemble.csv");
    os << "member,probability,index,re,im\n";
    for (std::size_t j = 0; j < e.members.size(); ++j) {
        for (std::size_t i : e.members[j].support) {
            const Complex c = e.members[j].w(static_cast<Eigen::Index>(i));
            os << j << ',' << fmt(e.members[j].probability) << ',' << i << ',' << fmt(c.real())
               << ',' << fmt(c.imag()) << '\n';
        }
    }
    std::ofstream sm = open_out(a.out, "summary.txt");
    sm << "dim " << v.size() << "\nsparsity " << a.sparsity << "\nmembers " << e.size()
       << "\ntrace_distance " << fmt(e.measured_trace_dist) << "\namplitude_gap " << fmt(chk.lhs)
       << "\nsqrt_trace_distance " << fmt(chk.rhs)
       << "\namplitude_bound_holds " << (chk.holds ? "yes" : "no")
       << "\nsuccess_prob " << fmt(prep.success_prob)
       << "\nformula_success_prob " << fmt(prep.formula_success_prob) << "\n";
    std::cout << "members " << e.size() << " trace_distance " << fmt(e.measured_trace_dist)
              << "\n";
    return 0;
}

void add_pipeline_flags(CLI::App *cmd, SimulateArgs &a) {
    cmd->add_option("--approach", a.approach, "a1, a2, a3 or td")
        ->check(CLI::IsMember({"a1", "a2", "a3", "td"}));
    cmd->add_option("--t", a.t, "evolution time");
    cmd->add_option("--delta", a.delta, "target precision in (0, 1/2)");
    cmd->add_option("--samples", a.samples, "Monte Carlo samples per term (a2)");
    cmd->add_option("--seed", a.seed, "RNG seed (a2)");
    cmd->add_option("--sparsity", a.sparsity, "truncation sparsity (a3, 0 = exact)");
    cmd->add_option("--groups", a.groups, "tail groups kept by the truncation");
    cmd->add_flag("--no-simplify", a.no_simplify, "keep identity factors in term encodings");
    cmd->add_flag("--ledger-only", a.ledger_only, "count resources without dense matrices");
    cmd->add_option("--oracle", a.oracle, "compare against dense exponentiation")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--out", a.out, "output directory");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"hybridsim: block-encoding Hamiltonian simulation with resource ledgers"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App *simulate = app.add_subcommand("simulate", "run one pipeline on a HAMSPEC file");
    simulate->add_option("input", sim.input, "HAMSPEC file")->required()->check(CLI::ExistingFile);
    add_pipeline_flags(simulate, sim);

    SweepArgs sw;
    CLI::App *sweep = app.add_subcommand("sweep", "scaling sweep in ledger mode");
    sweep->add_option("--family", sw.family, "chain, tfim or file")
        ->check(CLI::IsMember({"chain", "tfim", "file"}));
    sweep->add_option("--input", sw.input, "HAMSPEC file for --family file");
    sweep->add_option("--sites", sw.sites, "chain length");
    sweep->add_option("--param", sw.param, "K, t, delta, samples or sparsity")
        ->check(CLI::IsMember({"K", "t", "delta", "samples", "sparsity"}));
    sweep->add_option("--values", sw.values, "sweep values")->required()->delimiter(',');
    sweep->add_option("--counter", sw.counter, "ledger counter");
    sweep->add_option("--seeds", sw.seeds, "seeds per point (samples sweep)");
    add_pipeline_flags(sweep, sw.base);

    TruncateArgs tr;
    CLI::App *truncate = app.add_subcommand("truncate", "sparse ensemble of a unit vector");
    truncate->add_option("--vector", tr.vector_file, "one amplitude per line: re [im]")
        ->required()
        ->check(CLI::ExistingFile);
    truncate->add_option("--sparsity", tr.sparsity, "sparsity s")->required();
    truncate->add_option("--groups", tr.groups, "tail groups");
    truncate->add_option("--out", tr.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*simulate) {
            return run_simulate(sim);
        }
        if (*sweep) {
            return run_sweep(sw);
        }
        return run_truncate(tr);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_validation_error(e.kind()) ? kExitValidation : kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

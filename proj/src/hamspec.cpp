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

// HAMSPEC reader. Example:
//
//   dims 2 2 2
//   flags rescale
//   term 1: Z , Z
//   term 2: [ 0 1 ; 1 0 ] , I
//   coeff 1: cosine 1 1 0
//   coeff 2: constant 0.5

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hybridsim/errors.hpp"
#include "hybridsim/hamiltonian.hpp"

namespace hybridsim {

namespace {

struct LineError {
    std::size_t line;
    [[noreturn]] void fail(const std::string &msg) const {
        raise(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
    }
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string &s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

bool parse_real(std::string_view s, double &out) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_size(std::string_view s, std::size_t &out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_complex(std::string_view s, Complex &out) {
    if (s.empty()) {
        return false;
    }
    const char last = s.back();
    if (last != 'i' && last != 'j') {
        double re = 0.0;
        if (!parse_real(s, re)) {
            return false;
        }
        out = Complex(re, 0.0);
        return true;
    }
    std::string_view body = s.substr(0, s.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    double re = 0.0;
    std::string_view im_str = body;
    if (split != std::string_view::npos) {
        if (!parse_real(body.substr(0, split), re)) {
            return false;
        }
        im_str = body.substr(split);
    }
    double im = 0.0;
    if (im_str.empty() || im_str == "+") {
        im = 1.0;
    } else if (im_str == "-") {
        im = -1.0;
    } else if (!parse_real(im_str, im)) {
        return false;
    }
    out = Complex(re, im);
    return true;
}

CMatrix parse_literal(const std::string &text, std::size_t d, const LineError &at) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        at.fail("malformed matrix literal '" + text + "'");
    }
    std::string body = text.substr(1, text.size() - 2);
    for (char &c : body) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::vector<std::string> rows;
    std::string cur;
    for (char c : body) {
        if (c == ';') {
            rows.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    rows.push_back(cur);
    const auto n = static_cast<Eigen::Index>(d);
    if (rows.size() != d) {
        raise(ErrorKind::DimensionMismatch, "line " + std::to_string(at.line) + ": literal has " +
                                                std::to_string(rows.size()) + " rows, expected " +
                                                std::to_string(d));
    }
    CMatrix m(n, n);
    for (std::size_t r = 0; r < d; ++r) {
        const auto entries = split_ws(rows[r]);
        if (entries.size() != d) {
            raise(ErrorKind::DimensionMismatch,
                  "line " + std::to_string(at.line) + ": row " + std::to_string(r + 1) + " has " +
                      std::to_string(entries.size()) + " entries, expected " + std::to_string(d));
        }
        for (std::size_t c = 0; c < d; ++c) {
            Complex z;
            if (!parse_complex(entries[c], z)) {
                at.fail("bad matrix entry '" + entries[c] + "'");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
        }
    }
    return m;
}

CMatrix parse_factor(const std::string &tok, std::size_t d, bool rescale, const LineError &at) {
    if (tok.empty()) {
        at.fail("empty factor");
    }
    if (tok.front() == '[') {
        return parse_literal(tok, d, at);
    }
    if (tok == "I") {
        return identity(d);
    }
    if (tok == "X" || tok == "Y" || tok == "Z") {
        if (d != 2) {
            at.fail("named Pauli '" + tok + "' requires d = 2");
        }
        CMatrix p = pauli(tok[0]);
        return rescale ? CMatrix(0.5 * p) : p;
    }
    at.fail("unknown factor '" + tok + "'");
}

TimeCoefficient parse_coeff(const std::vector<std::string> &toks, const LineError &at) {
    if (toks.empty()) {
        at.fail("coefficient kind missing");
    }
    std::vector<double> p;
    for (std::size_t k = 1; k < toks.size(); ++k) {
        double v = 0.0;
        if (!parse_real(toks[k], v)) {
            at.fail("bad coefficient parameter '" + toks[k] + "'");
        }
        p.push_back(v);
    }
    const std::string &kind = toks[0];
    auto get = [&](std::size_t i, double fb) { return i < p.size() ? p[i] : fb; };
    if (kind == "constant" || kind == "const") {
        if (p.size() > 1) {
            at.fail("constant takes one parameter");
        }
        return TimeCoefficient::constant(get(0, 1.0));
    }
    if (kind == "polynomial" || kind == "poly") {
        if (p.empty()) {
            at.fail("polynomial needs coefficients");
        }
        return TimeCoefficient::polynomial(p);
    }
    if (kind == "cosine" || kind == "cos") {
        if (p.size() > 3) {
            at.fail("cosine takes at most three parameters");
        }
        return TimeCoefficient::cosine(get(0, 1.0), get(1, 1.0), get(2, 0.0));
    }
    if (kind == "sine" || kind == "sin") {
        if (p.size() > 3) {
            at.fail("sine takes at most three parameters");
        }
        return TimeCoefficient::sine(get(0, 1.0), get(1, 1.0), get(2, 0.0));
    }
    if (kind == "exp" || kind == "expdecay") {
        if (p.size() != 2) {
            at.fail("exp takes two parameters (a kappa)");
        }
        return TimeCoefficient::exp_decay(p[0], p[1]);
    }
    at.fail("unknown coefficient kind '" + kind + "'");
}

// Splits "i: rest" into (i, rest).
std::pair<std::size_t, std::string> indexed_body(const std::string &rest, const LineError &at) {
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
        at.fail("expected '<index>:'");
    }
    std::size_t idx = 0;
    if (!parse_size(trim(rest.substr(0, colon)), idx) || idx == 0) {
        at.fail("bad index '" + trim(rest.substr(0, colon)) + "'");
    }
    return {idx, trim(rest.substr(colon + 1))};
}

std::vector<std::string> split_factors(const std::string &body, const LineError &at) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '[') {
            ++depth;
        } else if (c == ']') {
            --depth;
            if (depth < 0) {
                at.fail("unbalanced ']'");
            }
        }
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (depth != 0) {
        at.fail("unbalanced '['");
    }
    out.push_back(trim(cur));
    return out;
}

} // namespace

TensorFactorHamiltonian parse_hamiltonian(std::string_view text) {
    std::size_t K = 0, M = 0, d = 0;
    bool have_dims = false;
    bool rescale = false;
    std::map<std::size_t, std::pair<std::string, std::size_t>> raw_terms;
    std::map<std::size_t, TimeCoefficient> coeffs;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const LineError at{lineno};
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto sp = line.find_first_of(" \t");
        const std::string keyword = line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? std::string() : trim(line.substr(sp));
        if (keyword == "dims") {
            if (have_dims) {
                at.fail("duplicate dims line");
            }
            const auto toks = split_ws(rest);
            if (toks.size() != 3 || !parse_size(toks[0], K) || !parse_size(toks[1], M) ||
                !parse_size(toks[2], d)) {
                at.fail("expected 'dims K M d'");
            }
            if (K < 1 || M < 1 || d < 2) {
                at.fail("dims require K >= 1, M >= 1, d >= 2");
            }
            have_dims = true;
        } else if (keyword == "flags") {
            for (const auto &f : split_ws(rest)) {
                if (f == "rescale") {
                    rescale = true;
                } else if (f != "timedep") {
                    at.fail("unknown flag '" + f + "'");
                }
            }
        } else if (keyword == "term") {
            auto [idx, body] = indexed_body(rest, at);
            if (raw_terms.count(idx)) {
                at.fail("duplicate term " + std::to_string(idx));
            }
            raw_terms[idx] = {body, lineno};
        } else if (keyword == "coeff") {
            auto [idx, body] = indexed_body(rest, at);
            if (coeffs.count(idx)) {
                at.fail("duplicate coeff " + std::to_string(idx));
            }
            coeffs.emplace(idx, parse_coeff(split_ws(body), at));
        } else {
            at.fail("unknown directive '" + keyword + "'");
        }
    }
    if (!have_dims) {
        LineError{lineno}.fail("missing 'dims K M d' header");
    }

    std::vector<std::vector<CMatrix>> terms;
    for (std::size_t i = 1; i <= K; ++i) {
        const auto it = raw_terms.find(i);
        if (it == raw_terms.end()) {
            LineError{lineno}.fail("term " + std::to_string(i) + " not defined");
        }
        const LineError at{it->second.second};
        const auto toks = split_factors(it->second.first, at);
        if (toks.size() != M) {
            raise(ErrorKind::DimensionMismatch, "line " + std::to_string(at.line) + ": term " +
                                                    std::to_string(i) + " has " +
                                                    std::to_string(toks.size()) +
                                                    " factors, expected " + std::to_string(M));
        }
        std::vector<CMatrix> factors;
        for (const auto &tok : toks) {
            factors.push_back(parse_factor(tok, d, rescale, at));
        }
        terms.push_back(std::move(factors));
    }
    if (raw_terms.size() != K) {
        LineError{raw_terms.rbegin()->second.second}.fail("term index exceeds K");
    }

    std::optional<std::vector<TimeCoefficient>> coefficients;
    if (!coeffs.empty()) {
        std::vector<TimeCoefficient> list;
        for (std::size_t i = 1; i <= K; ++i) {
            const auto it = coeffs.find(i);
            if (it == coeffs.end()) {
                LineError{lineno}.fail("coeff " + std::to_string(i) + " not defined");
            }
            list.push_back(it->second);
        }
        if (coeffs.size() != K) {
            LineError{lineno}.fail("coeff index exceeds K");
        }
        coefficients = std::move(list);
    }

    NormPolicy policy;
    policy.rescale = rescale;
    return TensorFactorHamiltonian(d, std::move(terms), std::move(coefficients), policy);
}

TensorFactorHamiltonian load_hamiltonian(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorKind::ParseError, "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hamiltonian(buf.str());
}

} // namespace hybridsim

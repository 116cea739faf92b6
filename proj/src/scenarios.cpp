// Copyright 2026 The weakval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakval/scenarios.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "weakval/errors.hpp"

namespace weakval::scenarios {

namespace {

using linalg::ComplexMatrix;
using linalg::ComplexVector;
using nlohmann::json;

constexpr double kWeakValueTolerance = 1e-12;

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_target(Complex t) {
    if (t.imag() == 0) {
        return format_number(t.real());
    }
    std::string imag = format_number(t.imag()) + "i";
    if (t.real() == 0) {
        return imag;
    }
    return format_number(t.real()) + (t.imag() > 0 ? "+" : "") + imag;
}

double parse_real(std::string_view text) {
    std::string s(text);
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception &) {
        throw InputError("cannot parse number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(value)) {
        throw InputError("cannot parse number '" + s + "'");
    }
    return value;
}

int parse_int(std::string_view text) {
    double v = parse_real(text);
    if (v != std::floor(v)) {
        throw InputError("expected an integer, got '" + std::string(text) + "'");
    }
    return static_cast<int>(v);
}

json complex_array(std::span<const Complex> values) {
    json out = json::array();
    for (const Complex &z : values) {
        out.push_back({z.real(), z.imag()});
    }
    return out;
}

std::vector<Complex> read_complex_array(const json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw InputError(std::string("scenario document lacks array '") + key + "'");
    }
    std::vector<Complex> out;
    for (const json &pair : j.at(key)) {
        if (!pair.is_array() || pair.size() != 2) {
            throw InputError(std::string("'") + key + "' entries must be [re, im] pairs");
        }
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
}

ComplexVector spin_post_state(Complex target) {
    // The bra <Phi| has components (t + 1, 1 - t); store the conjugate ket.
    Complex t = std::conj(target);
    return ComplexVector{t + 1.0, 1.0 - t}.normalized();
}

}  // namespace

double Scenario::max_shift() const {
    double bound = 0;
    for (std::size_t r = 0; r < op.dim(); ++r) {
        double row = 0;
        for (std::size_t c = 0; c < op.dim(); ++c) {
            row += std::abs(op(r, c));
        }
        bound = std::max(bound, row);
    }
    return std::abs(coupling.g) * bound;
}

void Scenario::validate() const {
    if (name.empty()) {
        throw InputError("scenario name must not be empty");
    }
    coupling.validate();
    if (op.dim() != pre.size()) {
        throw InputError("scenario operator dimension does not match its states");
    }
    if (!op.is_hermitian()) {
        throw InputError("scenario operator is not Hermitian");
    }
    tsvf::TwoStateVector tsv = two_state_vector();
    Complex derived = tsvf::weak_value(op, tsv);
    if (std::abs(derived - weak_value) > kWeakValueTolerance * std::max(1.0, std::abs(derived))) {
        throw InputError("cached weak value of scenario '" + name + "' does not re-derive");
    }
}

Scenario make_scenario(std::string name, ComplexVector pre, ComplexVector post, ComplexMatrix op,
                       pointer::CouplingConfig coupling, std::optional<pointer::PointerGrid> grid) {
    coupling.validate();
    Complex wv = tsvf::weak_value(op, tsvf::TwoStateVector(pre, post));
    Scenario s{std::move(name), std::move(pre), std::move(post), std::move(op), coupling,
               grid.value_or(pointer::PointerGrid::symmetric(pointer::kMinGridSize, 1.0)), wv};
    if (!grid) {
        s.grid = pointer::PointerGrid::for_coupling(coupling.delta, s.max_shift());
    }
    s.validate();
    return s;
}

Scenario with_coupling(const Scenario &base, pointer::CouplingConfig coupling, std::optional<std::size_t> grid_n,
                       std::optional<double> grid_half_extent) {
    coupling.validate();
    Scenario probe = base;
    probe.coupling = coupling;
    std::optional<pointer::PointerGrid> grid;
    if (grid_n || grid_half_extent) {
        pointer::PointerGrid defaults = pointer::PointerGrid::for_coupling(coupling.delta, probe.max_shift(),
                                                                           grid_n.value_or(pointer::kDefaultGridSize));
        grid = pointer::PointerGrid::symmetric(grid_n.value_or(defaults.n()),
                                               grid_half_extent.value_or(defaults.q_max()));
    }
    return make_scenario(base.name, base.pre, base.post, base.op, coupling, grid);
}

Scenario three_box(Box box, pointer::CouplingConfig coupling) {
    const double s = 1.0 / std::sqrt(3.0);
    ComplexVector pre{s, s, s};
    ComplexVector post{s, s, -s};
    std::vector<double> diag;
    std::string label;
    switch (box) {
        case Box::kA:
            diag = {1, 0, 0};
            label = "A";
            break;
        case Box::kB:
            diag = {0, 1, 0};
            label = "B";
            break;
        case Box::kC:
            diag = {0, 0, 1};
            label = "C";
            break;
        case Box::kAll:
            diag = {1, 1, 1};
            label = "ABC";
            break;
    }
    return make_scenario("three-box/" + label, pre, post, ComplexMatrix::diagonal(diag), coupling);
}

Scenario spin_amplification(Complex target, std::optional<pointer::CouplingConfig> coupling) {
    if (!std::isfinite(target.real()) || !std::isfinite(target.imag()) || std::abs(target) > kMaxSpinTarget) {
        throw UndefinedWeakValue("spin amplification target must be finite with |target| <= 1e10");
    }
    const double r = 1.0 / std::sqrt(2.0);
    pointer::CouplingConfig c = coupling.value_or(pointer::CouplingConfig{1.0, std::max(10.0, 10 * std::abs(target))});
    return make_scenario("spin-amp/" + format_target(target), ComplexVector{r, r}, spin_post_state(target),
                         linalg::pauli_z(), c);
}

Scenario ensemble_average(int n_spins, double per_spin_target, std::optional<pointer::CouplingConfig> coupling) {
    if (n_spins < 2 || n_spins > kMaxEnsembleSpins) {
        throw DimensionCapError("ensemble_average: n_spins must lie in [2, 12]");
    }
    if (!std::isfinite(per_spin_target) || std::abs(per_spin_target) > kMaxSpinTarget) {
        throw UndefinedWeakValue("ensemble_average: per-spin target must be finite with |target| <= 1e10");
    }
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector spin_pre{r, r};
    ComplexVector spin_post = spin_post_state(per_spin_target);
    ComplexVector pre = spin_pre;
    ComplexVector post = spin_post;
    for (int k = 1; k < n_spins; ++k) {
        pre = linalg::tensor_product(pre, spin_pre);
        post = linalg::tensor_product(post, spin_post);
    }
    // (1/N) sum_k sigma_z^(k) is diagonal: +1 for each up (0) bit, -1 for each down bit.
    const std::size_t dim = pre.size();
    std::vector<double> diag(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        int down = std::popcount(b);
        diag[b] = static_cast<double>(n_spins - 2 * down) / n_spins;
    }
    pointer::CouplingConfig c = coupling.value_or(pointer::CouplingConfig{1.0, 2.0});
    return make_scenario("ensemble/" + std::to_string(n_spins) + "/" + format_number(per_spin_target), pre, post,
                         ComplexMatrix::diagonal(diag), c);
}

Complex parse_complex(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw InputError("empty complex number");
    }
    if (s.back() != 'i') {
        return parse_real(s);
    }
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string re_text = split == std::string::npos ? "" : body.substr(0, split);
    std::string im_text = split == std::string::npos ? body : body.substr(split);
    double im = 0;
    if (im_text.empty() || im_text == "+") {
        im = 1;
    } else if (im_text == "-") {
        im = -1;
    } else {
        im = parse_real(im_text);
    }
    return {re_text.empty() ? 0.0 : parse_real(re_text), im};
}

bool is_builtin_reference(std::string_view reference) {
    return reference.starts_with("three-box/") || reference.starts_with("spin-amp/") ||
           reference.starts_with("ensemble/");
}

Scenario from_reference(std::string_view reference) {
    auto tail = [&](std::string_view prefix) { return reference.substr(prefix.size()); };
    if (reference.starts_with("three-box/")) {
        std::string_view box = tail("three-box/");
        if (box == "A") return three_box(Box::kA);
        if (box == "B") return three_box(Box::kB);
        if (box == "C") return three_box(Box::kC);
        if (box == "ABC") return three_box(Box::kAll);
        throw InputError("unknown three-box variant '" + std::string(box) + "' (expected A, B, C or ABC)");
    }
    if (reference.starts_with("spin-amp/")) {
        return spin_amplification(parse_complex(tail("spin-amp/")));
    }
    if (reference.starts_with("ensemble/")) {
        std::string_view rest = tail("ensemble/");
        std::size_t slash = rest.find('/');
        if (slash == std::string_view::npos) {
            throw InputError("ensemble reference must be ensemble/<n>/<target>");
        }
        return ensemble_average(parse_int(rest.substr(0, slash)), parse_real(rest.substr(slash + 1)));
    }
    throw InputError("unknown scenario '" + std::string(reference) + "'");
}

std::string serialize(const Scenario &s) {
    json doc;
    doc["format"] = "weakval-scenario";
    doc["version"] = 1;
    doc["name"] = s.name;
    doc["dim"] = s.system_dim();
    doc["pre"] = complex_array(s.pre.span());
    doc["post"] = complex_array(s.post.span());
    doc["operator"] = complex_array(s.op.entries());
    doc["g"] = s.coupling.g;
    doc["delta"] = s.coupling.delta;
    doc["grid"] = {{"n", s.grid.n()}, {"q_min", s.grid.q_min()}, {"q_max", s.grid.q_max()}};
    doc["weak_value"] = {s.weak_value.real(), s.weak_value.imag()};
    return doc.dump(2) + "\n";
}

Scenario deserialize(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw InputError(std::string("scenario document is not valid JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != "weakval-scenario") {
            throw InputError("not a weakval scenario document");
        }
        std::size_t dim = doc.at("dim").get<std::size_t>();
        ComplexVector pre(read_complex_array(doc, "pre"));
        ComplexVector post(read_complex_array(doc, "post"));
        ComplexMatrix op(dim, read_complex_array(doc, "operator"));
        if (pre.size() != dim || post.size() != dim) {
            throw InputError("scenario states do not match 'dim'");
        }
        pointer::CouplingConfig coupling{doc.at("g").get<double>(), doc.at("delta").get<double>()};
        const json &g = doc.at("grid");
        pointer::PointerGrid grid(g.at("n").get<std::size_t>(), g.at("q_min").get<double>(),
                                  g.at("q_max").get<double>());
        return make_scenario(doc.at("name").get<std::string>(), std::move(pre), std::move(post), std::move(op),
                             coupling, grid);
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed scenario document: ") + e.what());
    }
}

std::uint64_t scenario_hash(const Scenario &s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : serialize(s)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace weakval::scenarios

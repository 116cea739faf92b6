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

#include "weakval/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "weakval/errors.hpp"
#include "weakval/linalg.hpp"
#include "weakval/pointer.hpp"

namespace weakval::cli {

namespace {

using scenarios::Scenario;

std::string number(double x) { return fmt::format("{:.17g}", x); }

/// Ordered key-value document rendered as JSON or "key = value" lines.
class Document {
   public:
    using Value = std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double, std::string>;

    Document &add(std::string key, Value value) {
        fields_.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    std::string render(DocumentFormat format) const {
        std::string out = format == DocumentFormat::kJson ? "{\n" : "";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            const auto &[key, value] = fields_[i];
            if (format == DocumentFormat::kJson) {
                out += fmt::format("  \"{}\": {}{}\n", key, json_value(value), i + 1 < fields_.size() ? "," : "");
            } else {
                out += fmt::format("{} = {}\n", key, kv_value(value));
            }
        }
        if (format == DocumentFormat::kJson) {
            out += "}\n";
        }
        return out;
    }

   private:
    static std::string escape(const std::string &s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') {
                out += '\\';
            }
            out += c;
        }
        return out;
    }

    static std::string json_value(const Value &v) {
        return std::visit(
            [](const auto &x) -> std::string {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, std::nullptr_t>) {
                    return "null";
                } else if constexpr (std::is_same_v<T, bool>) {
                    return x ? "true" : "false";
                } else if constexpr (std::is_same_v<T, double>) {
                    return std::isfinite(x) ? number(x) : "null";
                } else if constexpr (std::is_same_v<T, std::string>) {
                    return "\"" + escape(x) + "\"";
                } else {
                    return std::to_string(x);
                }
            },
            v);
    }

    static std::string kv_value(const Value &v) {
        return std::visit(
            [](const auto &x) -> std::string {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, std::nullptr_t>) {
                    return "none";
                } else if constexpr (std::is_same_v<T, bool>) {
                    return x ? "true" : "false";
                } else if constexpr (std::is_same_v<T, double>) {
                    return number(x);
                } else if constexpr (std::is_same_v<T, std::string>) {
                    return x;
                } else {
                    return std::to_string(x);
                }
            },
            v);
    }

    std::vector<std::pair<std::string, Value>> fields_;
};

std::ofstream open_output(const std::string &path) {
    std::ofstream file(path);
    if (!file) {
        throw InputError("cannot open output file '" + path + "'");
    }
    return file;
}

double parse_double(std::string_view text) {
    std::string s(text);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw InputError("invalid number '" + s + "' in sweep");
    }
    if (used != s.size() || !std::isfinite(v)) {
        throw InputError("invalid number '" + s + "' in sweep");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

SimulationSummary summarize_simulation(const Scenario &s, const pointer::PostSelected &selected) {
    SimulationSummary out;
    out.name = s.name;
    out.g = s.coupling.g;
    out.delta = s.coupling.delta;
    out.weak_value = s.weak_value;
    out.mean_q = pointer::mean_Q(selected.pointer);
    out.var_q = pointer::var_Q(selected.pointer);
    out.mean_p = pointer::mean_P(selected.pointer);
    out.var_p = pointer::var_P(selected.pointer);
    out.probability = selected.probability;
    out.reference_shift = s.coupling.g * s.weak_value.real();
    out.aav_fidelity = pointer::aav_fidelity(selected.pointer, out.reference_shift, s.coupling.delta);
    return out;
}

std::string provenance_header(std::string_view command, const Scenario &s, const std::string &extra) {
    std::string h = fmt::format("# weakval {}\n# command={} scenario={} scenario_hash={:016x}\n", kVersion, command,
                                s.name, scenarios::scenario_hash(s));
    h += fmt::format("# g={} delta={} grid_n={} q_min={} q_max={}\n", number(s.coupling.g), number(s.coupling.delta),
                     s.grid.n(), number(s.grid.q_min()), number(s.grid.q_max()));
    if (!extra.empty()) {
        h += "# " + extra + "\n";
    }
    return h;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kInput:
            return kExitInput;
        case ErrorKind::kPhysicsUndefined:
            return kExitPhysicsUndefined;
        case ErrorKind::kNumericalGuard:
            return kExitNumericalGuard;
        case ErrorKind::kNoAcceptedRuns:
            return kExitNoAcceptedRuns;
    }
    return kExitInput;
}

SweepSpec SweepSpec::parse(std::string_view text) {
    std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw InputError("sweep must look like <parameter>=<values>");
    }
    SweepSpec spec;
    std::string_view name = text.substr(0, eq);
    std::string_view body = text.substr(eq + 1);
    if (name == "g") {
        spec.parameter = SweepParameter::kG;
    } else if (name == "delta") {
        spec.parameter = SweepParameter::kDelta;
    } else if (name == "n_trials" || name == "n") {
        spec.parameter = SweepParameter::kNTrials;
    } else {
        throw InputError("unknown sweep parameter '" + std::string(name) + "' (expected g, delta or n_trials)");
    }

    if (body.find(':') != std::string_view::npos) {
        std::vector<std::string_view> parts = split(body, ':');
        if (parts.size() < 3 || parts.size() > 4) {
            throw InputError("sweep range must be start:stop:points[:linear|log]");
        }
        double start = parse_double(parts[0]);
        double stop = parse_double(parts[1]);
        double points_value = parse_double(parts[2]);
        if (points_value < 2 || points_value != std::floor(points_value)) {
            throw InputError("sweep range needs an integer number of points >= 2");
        }
        auto points = static_cast<std::size_t>(points_value);
        bool log_scale = parts.size() == 4 && parts[3] == "log";
        if (parts.size() == 4 && parts[3] != "log" && parts[3] != "linear") {
            throw InputError("sweep spacing must be 'linear' or 'log'");
        }
        if (log_scale && !(start > 0 && stop > 0)) {
            throw InputError("log sweep needs positive endpoints");
        }
        for (std::size_t k = 0; k < points; ++k) {
            double t = static_cast<double>(k) / static_cast<double>(points - 1);
            spec.values.push_back(log_scale ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                                            : start + t * (stop - start));
        }
    } else {
        for (std::string_view part : split(body, ',')) {
            spec.values.push_back(parse_double(part));
        }
    }
    if (spec.values.empty()) {
        throw InputError("sweep has no values");
    }
    for (double v : spec.values) {
        if (spec.parameter == SweepParameter::kDelta && !(v > 0)) {
            throw InputError("delta sweep values must be positive");
        }
        if (spec.parameter == SweepParameter::kNTrials && (!(v >= 1) || v != std::floor(v))) {
            throw InputError("n_trials sweep values must be positive integers");
        }
    }
    std::sort(spec.values.begin(), spec.values.end());
    return spec;
}

std::string_view SweepSpec::parameter_name() const {
    switch (parameter) {
        case SweepParameter::kG:
            return "g";
        case SweepParameter::kDelta:
            return "delta";
        case SweepParameter::kNTrials:
            return "n_trials";
    }
    return "";
}

Scenario resolve_scenario(std::string_view reference, const ScenarioOverrides &overrides) {
    Scenario base = [&] {
        if (scenarios::is_builtin_reference(reference)) {
            return scenarios::from_reference(reference);
        }
        std::string path(reference);
        if (!std::filesystem::is_regular_file(path)) {
            throw InputError("unknown scenario '" + path + "' (not a built-in name or a file)");
        }
        std::ifstream file(path);
        std::stringstream text;
        text << file.rdbuf();
        return scenarios::deserialize(text.str());
    }();
    if (!overrides.any()) {
        return base;
    }
    pointer::CouplingConfig coupling{overrides.g.value_or(base.coupling.g),
                                     overrides.delta.value_or(base.coupling.delta)};
    return scenarios::with_coupling(base, coupling, overrides.grid_n, overrides.grid_extent);
}

WeakValueReport cmd_weak_value(const Scenario &s) {
    linalg::EigenDecomposition eig = linalg::eig_hermitian(s.op);
    WeakValueReport r;
    r.name = s.name;
    r.weak_value = tsvf::weak_value(s.op, s.two_state_vector());
    r.overlap = linalg::inner_product(s.post, s.pre);
    r.eigenvalue_min = eig.eigenvalues.front();
    r.eigenvalue_max = eig.eigenvalues.back();
    const double tol = 1e-12 * std::max(1.0, std::abs(r.weak_value));
    r.anomalous = r.weak_value.real() < r.eigenvalue_min - tol || r.weak_value.real() > r.eigenvalue_max + tol;
    return r;
}

SimulationSummary cmd_simulate(const Scenario &s, const std::string &out_prefix, const std::string &provenance) {
    pointer::PointerState initial = pointer::make_gaussian(s.grid, s.coupling.delta, 0.0);
    pointer::JointState joint = pointer::couple(s.pre, initial, s.op, s.coupling.g);
    pointer::PostSelected selected = pointer::post_select(joint, s.post);
    SimulationSummary summary = summarize_simulation(s, selected);
    if (!out_prefix.empty()) {
        std::string header = provenance_header("simulate", s, provenance);
        auto density = open_output(out_prefix + ".density.dat");
        pointer::write_density(density, selected.pointer, header);
        auto wavefunction = open_output(out_prefix + ".wavefunction.dat");
        pointer::write_wavefunction(wavefunction, selected.pointer, header);
        auto momentum = open_output(out_prefix + ".momentum.dat");
        pointer::write_momentum_density(momentum, selected.pointer, header);
    }
    return summary;
}

montecarlo::EstimateReport cmd_sample(const Scenario &s, std::uint64_t n, std::uint64_t seed,
                                      const std::string &out_prefix, unsigned threads,
                                      const std::string &provenance) {
    std::vector<montecarlo::RunRecord> records;
    montecarlo::EstimateReport report = montecarlo::estimate_weak_value(seed, n, s, threads, &records);
    if (!out_prefix.empty()) {
        auto runs = open_output(out_prefix + ".runs.csv");
        std::string extra = fmt::format("seed={} n={}", seed, n);
        if (!provenance.empty()) {
            extra += " " + provenance;
        }
        montecarlo::write_runs(runs, records, provenance_header("sample", s, extra));
    }
    return report;
}

std::vector<ScanRow> cmd_scan(const Scenario &s, const SweepSpec &sweep, const ScenarioOverrides &overrides,
                              std::uint64_t seed) {
    std::vector<double> values = sweep.values;
    std::sort(values.begin(), values.end());
    std::vector<ScanRow> rows;
    for (double value : values) {
        Scenario row_scenario = s;
        if (sweep.parameter != SweepParameter::kNTrials) {
            pointer::CouplingConfig coupling = s.coupling;
            (sweep.parameter == SweepParameter::kG ? coupling.g : coupling.delta) = value;
            row_scenario = scenarios::with_coupling(s, coupling, overrides.grid_n, overrides.grid_extent);
        }
        ScanRow row{value, cmd_simulate(row_scenario), std::nullopt};
        if (sweep.parameter == SweepParameter::kNTrials) {
            row.estimate = montecarlo::estimate_weak_value(seed, static_cast<std::uint64_t>(value), row_scenario);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_scan_table(std::ostream &out, const SweepSpec &sweep, const std::vector<ScanRow> &rows,
                      const std::string &header) {
    out << header;
    bool with_estimate = sweep.parameter == SweepParameter::kNTrials;
    out << "sweep_" << sweep.parameter_name()
        << ",g,delta,mean_q,var_q,mean_p,var_p,probability,reference_shift,aav_fidelity,shift_over_g";
    if (with_estimate) {
        out << ",n_accepted,acceptance_rate,wv_estimate,std_error";
    }
    out << '\n';
    for (const ScanRow &row : rows) {
        const SimulationSummary &s = row.summary;
        out << number(row.value) << ',' << number(s.g) << ',' << number(s.delta) << ',' << number(s.mean_q) << ','
            << number(s.var_q) << ',' << number(s.mean_p) << ',' << number(s.var_p) << ',' << number(s.probability)
            << ',' << number(s.reference_shift) << ',' << number(s.aav_fidelity) << ','
            << (s.g != 0 ? number(s.mean_q / s.g) : std::string("nan"));
        if (with_estimate) {
            const montecarlo::EstimateReport &e = *row.estimate;
            out << ',' << e.n_accepted << ',' << number(e.acceptance_rate) << ',' << number(e.wv_estimate) << ','
                << (e.std_error_defined ? number(e.std_error) : std::string("nan"));
        }
        out << '\n';
    }
}

std::string render(const WeakValueReport &r, DocumentFormat format) {
    return Document()
        .add("scenario", r.name)
        .add("weak_value_re", r.weak_value.real())
        .add("weak_value_im", r.weak_value.imag())
        .add("overlap_re", r.overlap.real())
        .add("overlap_im", r.overlap.imag())
        .add("overlap_abs", std::abs(r.overlap))
        .add("eigenvalue_min", r.eigenvalue_min)
        .add("eigenvalue_max", r.eigenvalue_max)
        .add("anomalous", r.anomalous)
        .render(format);
}

std::string render(const SimulationSummary &s, DocumentFormat format) {
    return Document()
        .add("scenario", s.name)
        .add("g", s.g)
        .add("delta", s.delta)
        .add("weak_value_re", s.weak_value.real())
        .add("weak_value_im", s.weak_value.imag())
        .add("mean_q", s.mean_q)
        .add("var_q", s.var_q)
        .add("mean_p", s.mean_p)
        .add("var_p", s.var_p)
        .add("probability", s.probability)
        .add("reference_shift", s.reference_shift)
        .add("aav_fidelity", s.aav_fidelity)
        .render(format);
}

std::string render(const montecarlo::EstimateReport &r, DocumentFormat format) {
    return Document()
        .add("seed", r.seed)
        .add("n_total", r.n_total)
        .add("n_accepted", r.n_accepted)
        .add("acceptance_rate", r.acceptance_rate)
        .add("acceptance_probability", r.acceptance_probability)
        .add("g", r.g)
        .add("wv_estimate", r.wv_estimate)
        .add("std_error", r.std_error_defined ? Document::Value(r.std_error) : Document::Value(nullptr))
        .add("std_error_defined", r.std_error_defined)
        .render(format);
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weak values and weak measurements on pre- and post-selected systems", "weakval"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string reference;
    ScenarioOverrides overrides;
    std::uint64_t n = 100000;
    std::uint64_t seed = 1;
    std::string sweep_text;
    std::string out_prefix;
    std::string format_text = "json";
    unsigned threads = 1;

    auto add_scenario = [&](CLI::App *cmd) {
        cmd->add_option("--scenario", reference, "Built-in scenario (three-box/C, spin-amp/100, ensemble/8/5) or file")
            ->required();
        cmd->add_option("--format", format_text, "Summary format")->check(CLI::IsMember({"json", "kv"}));
    };
    auto add_coupling = [&](CLI::App *cmd) {
        cmd->add_option("--g", overrides.g, "Integrated coupling strength");
        cmd->add_option("--delta", overrides.delta, "Initial pointer width");
        cmd->add_option("--grid-n", overrides.grid_n, "Pointer grid samples (power of two)");
        cmd->add_option("--grid-extent", overrides.grid_extent, "Half extent of the symmetric pointer grid");
        cmd->add_option("--out", out_prefix, "Output path prefix");
    };

    CLI::App *weak_value = app.add_subcommand("weak-value", "Analytic weak value of a scenario");
    add_scenario(weak_value);
    CLI::App *simulate = app.add_subcommand("simulate", "Pointer coupling and post-selection");
    add_scenario(simulate);
    add_coupling(simulate);
    CLI::App *sample = app.add_subcommand("sample", "Monte Carlo ensemble estimate of the weak value");
    add_scenario(sample);
    add_coupling(sample);
    sample->add_option("--n", n, "Number of trials")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Master seed");
    sample->add_option("--threads", threads, "Worker threads (results do not depend on it)");
    CLI::App *scan = app.add_subcommand("scan", "Parameter sweep of the pointer simulation");
    add_scenario(scan);
    add_coupling(scan);
    scan->add_option("--sweep", sweep_text, "e.g. delta=10,100,1000 or g=1e-3:1e-1:5:log")->required();
    scan->add_option("--seed", seed, "Master seed for n_trials sweeps");
    CLI::App *show = app.add_subcommand("show", "Print the scenario document");
    add_scenario(show);
    add_coupling(show);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    const DocumentFormat format = format_text == "kv" ? DocumentFormat::kKeyValue : DocumentFormat::kJson;
    const std::string extension = format == DocumentFormat::kJson ? ".json" : ".txt";
    try {
        Scenario scenario = resolve_scenario(reference, overrides);
        if (*weak_value) {
            out << render(cmd_weak_value(scenario), format);
        } else if (*simulate) {
            std::string doc = render(cmd_simulate(scenario, out_prefix), format);
            out << doc;
            if (!out_prefix.empty()) {
                open_output(out_prefix + ".summary" + extension) << doc;
            }
        } else if (*sample) {
            std::string doc = render(cmd_sample(scenario, n, seed, out_prefix, threads), format);
            out << doc;
            if (!out_prefix.empty()) {
                open_output(out_prefix + ".report" + extension) << doc;
            }
        } else if (*scan) {
            SweepSpec sweep = SweepSpec::parse(sweep_text);
            std::vector<ScanRow> rows = cmd_scan(scenario, sweep, overrides, seed);
            std::string header = provenance_header("scan", scenario, fmt::format("sweep={} seed={}", sweep_text, seed));
            if (out_prefix.empty()) {
                write_scan_table(out, sweep, rows, header);
            } else {
                auto file = open_output(out_prefix);
                write_scan_table(file, sweep, rows, header);
            }
        } else if (*show) {
            out << scenarios::serialize(scenario);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kExitOk;
}

}  // namespace weakval::cli

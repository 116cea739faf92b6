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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakval/errors.hpp"
#include "weakval/montecarlo.hpp"
#include "weakval/scenarios.hpp"

namespace weakval::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,
    kExitPhysicsUndefined = 3,
    kExitNumericalGuard = 4,
    kExitNoAcceptedRuns = 5,
};

int exit_code_for(ErrorKind kind);

enum class SweepParameter { kG, kDelta, kNTrials };

/// Parameter values for a scan. Text forms:
///   delta=10,100,1000             explicit list
///   g=0.001:0.1:5:log             start:stop:points[:linear|log]
struct SweepSpec {
    SweepParameter parameter = SweepParameter::kDelta;
    std::vector<double> values;

    static SweepSpec parse(std::string_view text);
    std::string_view parameter_name() const;
};

struct ScenarioOverrides {
    std::optional<double> g;
    std::optional<double> delta;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_extent;  // half extent of a symmetric grid

    bool any() const { return g || delta || grid_n || grid_extent; }
};

/// Built-in registry first, then a scenario document on disk.
scenarios::Scenario resolve_scenario(std::string_view reference, const ScenarioOverrides &overrides = {});

struct WeakValueReport {
    std::string name;
    Complex weak_value;
    Complex overlap;
    double eigenvalue_min;
    double eigenvalue_max;
    bool anomalous;  // real part outside [eigenvalue_min, eigenvalue_max]
};

WeakValueReport cmd_weak_value(const scenarios::Scenario &scenario);

struct SimulationSummary {
    std::string name;
    double g;
    double delta;
    Complex weak_value;
    double mean_q;
    double var_q;
    double mean_p;
    double var_p;
    double probability;
    double reference_shift;  // g * Re(O_w)
    double aav_fidelity;
};

/// couple + post_select. With a non-empty out_prefix writes
/// <prefix>.density.dat, <prefix>.wavefunction.dat and <prefix>.momentum.dat.
SimulationSummary cmd_simulate(const scenarios::Scenario &scenario, const std::string &out_prefix = {},
                               const std::string &provenance = {});

/// With a non-empty out_prefix writes <prefix>.runs.csv.
montecarlo::EstimateReport cmd_sample(const scenarios::Scenario &scenario, std::uint64_t n, std::uint64_t seed,
                                      const std::string &out_prefix = {}, unsigned threads = 1,
                                      const std::string &provenance = {});

struct ScanRow {
    double value;
    SimulationSummary summary;
    std::optional<montecarlo::EstimateReport> estimate;  // n_trials sweeps only
};

/// One row per sweep value, ascending. grid_n / grid_extent overrides are kept
/// for every row; otherwise each row uses the default grid for its coupling.
std::vector<ScanRow> cmd_scan(const scenarios::Scenario &scenario, const SweepSpec &sweep,
                              const ScenarioOverrides &overrides = {}, std::uint64_t seed = 0);

void write_scan_table(std::ostream &out, const SweepSpec &sweep, const std::vector<ScanRow> &rows,
                      const std::string &header = {});

enum class DocumentFormat { kJson, kKeyValue };

std::string render(const WeakValueReport &r, DocumentFormat format);
std::string render(const SimulationSummary &s, DocumentFormat format);
std::string render(const montecarlo::EstimateReport &r, DocumentFormat format);

/// Entry point behind the `weakval` binary.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace weakval::cli

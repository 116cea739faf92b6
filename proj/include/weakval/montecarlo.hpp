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
#include <span>
#include <string>
#include <vector>

#include "weakval/pointer.hpp"
#include "weakval/scenarios.hpp"

namespace weakval::montecarlo {

/// One member of the pre- and post-selected ensemble.
struct RunRecord {
    std::uint64_t trial_index = 0;
    bool accepted = false;
    std::optional<double> readout_q;  // present iff accepted
    std::uint64_t rng_stream_id = 0;

    bool operator==(const RunRecord &other) const = default;
};

struct EstimateReport {
    std::uint64_t seed = 0;
    std::uint64_t n_total = 0;
    std::uint64_t n_accepted = 0;
    double acceptance_rate = 0;
    /// Exact post-selection probability the acceptance rate should match.
    double acceptance_probability = 0;
    double g = 0;
    double wv_estimate = 0;
    /// sample_std(readouts) / (g sqrt(n_accepted)); NaN when fewer than two runs were accepted.
    double std_error = 0;
    bool std_error_defined = false;

    bool operator==(const EstimateReport &other) const;
};

/// Counter-based stream id: a SplitMix64 mix of the master seed and the trial index.
std::uint64_t stream_id(std::uint64_t seed, std::uint64_t trial);

/// Exact conditional pointer distribution of a scenario, prepared once and
/// sampled per trial. Readout resolution is the grid spacing.
class RunSampler {
   public:
    explicit RunSampler(const scenarios::Scenario &scenario);

    RunRecord sample(std::uint64_t seed, std::uint64_t trial) const;
    double acceptance_probability() const noexcept { return acceptance_probability_; }
    const pointer::PointerState &conditional_pointer() const noexcept { return *conditional_; }

   private:
    double acceptance_probability_;
    std::optional<pointer::PointerState> conditional_;
    std::vector<double> cdf_;
};

RunRecord sample_run(std::uint64_t seed, std::uint64_t trial, const scenarios::Scenario &scenario);

/// Samples trials 0 .. n-1 and estimates Re(O_w) as mean(readouts) / g.
/// The report is a pure function of (seed, n, scenario) for every thread count.
EstimateReport estimate_weak_value(std::uint64_t seed, std::uint64_t n, const scenarios::Scenario &scenario,
                                   unsigned threads = 1, std::vector<RunRecord> *records = nullptr);

/// Reduces run records (in trial order) into a report.
EstimateReport summarize(std::span<const RunRecord> records, std::uint64_t seed, double g,
                         double acceptance_probability);

/// "trial,accepted,readout" rows; rejected trials leave the readout empty.
void write_runs(std::ostream &out, std::span<const RunRecord> records, const std::string &header = {});

}  // namespace weakval::montecarlo

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

#include "weakval/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "weakval/errors.hpp"

namespace weakval::montecarlo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double uniform(std::mt19937_64 &engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

bool EstimateReport::operator==(const EstimateReport &o) const {
    return seed == o.seed && n_total == o.n_total && n_accepted == o.n_accepted &&
           same_bits(acceptance_rate, o.acceptance_rate) &&
           same_bits(acceptance_probability, o.acceptance_probability) && same_bits(g, o.g) &&
           same_bits(wv_estimate, o.wv_estimate) && same_bits(std_error, o.std_error) &&
           std_error_defined == o.std_error_defined;
}

std::uint64_t stream_id(std::uint64_t seed, std::uint64_t trial) { return splitmix64(splitmix64(seed) ^ trial); }

RunSampler::RunSampler(const scenarios::Scenario &scenario) {
    scenario.validate();
    pointer::PointerState initial = pointer::make_gaussian(scenario.grid, scenario.coupling.delta, 0.0);
    pointer::JointState joint = pointer::couple(scenario.pre, initial, scenario.op, scenario.coupling.g);
    pointer::PostSelected selected = pointer::post_select(joint, scenario.post);
    acceptance_probability_ = selected.probability;
    conditional_ = std::move(selected.pointer);

    std::vector<double> density = conditional_->density();
    cdf_.resize(density.size());
    double running = 0;
    for (std::size_t k = 0; k < density.size(); ++k) {
        running += density[k];
        cdf_[k] = running;
    }
}

RunRecord RunSampler::sample(std::uint64_t seed, std::uint64_t trial) const {
    RunRecord record;
    record.trial_index = trial;
    record.rng_stream_id = stream_id(seed, trial);
    std::mt19937_64 engine(record.rng_stream_id);
    record.accepted = uniform(engine) < acceptance_probability_;
    if (record.accepted) {
        double target = uniform(engine) * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        std::size_t index = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
        record.readout_q = conditional_->grid().position(index);
    }
    return record;
}

RunRecord sample_run(std::uint64_t seed, std::uint64_t trial, const scenarios::Scenario &scenario) {
    return RunSampler(scenario).sample(seed, trial);
}

EstimateReport summarize(std::span<const RunRecord> records, std::uint64_t seed, double g,
                         double acceptance_probability) {
    if (records.empty()) {
        throw InputError("summarize: no runs");
    }
    if (g == 0 || !std::isfinite(g)) {
        throw InputError("weak value estimation requires a finite nonzero coupling g");
    }
    EstimateReport report;
    report.seed = seed;
    report.g = g;
    report.acceptance_probability = acceptance_probability;
    report.n_total = records.size();
    double sum = 0;
    for (const RunRecord &r : records) {
        if (r.accepted) {
            ++report.n_accepted;
            sum += *r.readout_q;
        }
    }
    if (report.n_accepted == 0) {
        throw NoAcceptedRuns("no run out of " + std::to_string(records.size()) + " passed post-selection");
    }
    const double n_acc = static_cast<double>(report.n_accepted);
    report.acceptance_rate = n_acc / static_cast<double>(report.n_total);
    const double mean = sum / n_acc;
    report.wv_estimate = mean / g;
    if (report.n_accepted >= 2) {
        double ss = 0;
        for (const RunRecord &r : records) {
            if (r.accepted) {
                ss += (*r.readout_q - mean) * (*r.readout_q - mean);
            }
        }
        report.std_error = std::sqrt(ss / (n_acc - 1)) / (std::abs(g) * std::sqrt(n_acc));
        report.std_error_defined = true;
    } else {
        report.std_error = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

EstimateReport estimate_weak_value(std::uint64_t seed, std::uint64_t n, const scenarios::Scenario &scenario,
                                   unsigned threads, std::vector<RunRecord> *records) {
    if (n < 1) {
        throw InputError("estimate_weak_value: n must be at least 1");
    }
    if (scenario.coupling.g == 0) {
        throw InputError("weak value estimation requires a nonzero coupling g");
    }
    RunSampler sampler(scenario);
    std::vector<RunRecord> runs(n);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n, 256))));
    auto fill = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            runs[t] = sampler.sample(seed, t);
        }
    };
    if (threads == 1) {
        fill(0, n);
    } else {
        std::vector<std::jthread> workers;
        const std::uint64_t chunk = (n + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            std::uint64_t begin = w * chunk;
            std::uint64_t end = std::min<std::uint64_t>(n, begin + chunk);
            if (begin < end) {
                workers.emplace_back(fill, begin, end);
            }
        }
    }
    EstimateReport report = summarize(runs, seed, scenario.coupling.g, sampler.acceptance_probability());
    if (records != nullptr) {
        *records = std::move(runs);
    }
    return report;
}

void write_runs(std::ostream &out, std::span<const RunRecord> records, const std::string &header) {
    if (!header.empty()) {
        out << header;
        if (header.back() != '\n') {
            out << '\n';
        }
    }
    out.precision(17);
    out << "trial,accepted,readout\n";
    for (const RunRecord &r : records) {
        out << r.trial_index << ',' << (r.accepted ? 1 : 0) << ',';
        if (r.readout_q) {
            out << *r.readout_q;
        }
        out << '\n';
    }
}

}  // namespace weakval::montecarlo

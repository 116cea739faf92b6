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
#include <optional>
#include <string>
#include <string_view>

#include "weakval/linalg.hpp"
#include "weakval/pointer.hpp"
#include "weakval/tsvf.hpp"

namespace weakval::scenarios {

inline constexpr int kMaxEnsembleSpins = 12;
inline constexpr double kMaxSpinTarget = 1e10;

/// A complete pre- and post-selected experiment: system states, the coupled
/// operator, pointer coupling and the pointer grid.
///
/// Scenario names are stable identifiers such as `three-box/A`,
/// `spin-amp/100` or `ensemble/8/5`.
struct Scenario {
    std::string name;
    linalg::ComplexVector pre;
    linalg::ComplexVector post;  // ket |Phi>, conjugated on use
    linalg::ComplexMatrix op;
    pointer::CouplingConfig coupling;
    pointer::PointerGrid grid;
    Complex weak_value;  // cached <Phi|O|Psi> / <Phi|Psi>

    std::size_t system_dim() const noexcept { return pre.size(); }
    tsvf::TwoStateVector two_state_vector() const { return {pre, post}; }
    /// Largest |g * o_i| over the spectrum of op (row-sum bound).
    double max_shift() const;
    /// Throws unless every component invariant holds and the cached weak value
    /// re-derives to 1e-12.
    void validate() const;
};

/// Builds and validates a scenario. Without an explicit grid, the default
/// pointer grid for the coupling is used.
Scenario make_scenario(std::string name, linalg::ComplexVector pre, linalg::ComplexVector post,
                       linalg::ComplexMatrix op, pointer::CouplingConfig coupling,
                       std::optional<pointer::PointerGrid> grid = std::nullopt);

/// Same system with a new coupling. The grid is rebuilt from the defaults
/// unless grid_n or grid_half_extent are given.
Scenario with_coupling(const Scenario &base, pointer::CouplingConfig coupling,
                       std::optional<std::size_t> grid_n = std::nullopt,
                       std::optional<double> grid_half_extent = std::nullopt);

enum class Box { kA, kB, kC, kAll };

/// Single particle in three boxes, pre-selected in (A + B + C)/sqrt3 and
/// post-selected in (A + B - C)/sqrt3. The operator projects onto `box`.
Scenario three_box(Box box, pointer::CouplingConfig coupling = {0.1, 5.0});

/// sigma_z on a spin-1/2 with pre-state (1,1)/sqrt2 and a post-state chosen so
/// that the weak value equals target. |<Phi|Psi>| shrinks as |target| grows.
Scenario spin_amplification(Complex target, std::optional<pointer::CouplingConfig> coupling = std::nullopt);

/// Average spin (1/N) sum_k sigma_z^(k) of n_spins independent copies of the
/// spin_amplification(per_spin_target) system.
Scenario ensemble_average(int n_spins, double per_spin_target,
                          std::optional<pointer::CouplingConfig> coupling = std::nullopt);

/// Resolves `three-box/{A,B,C,ABC}`, `spin-amp/<target>` and
/// `ensemble/<n>/<target>`. Throws InputError for anything else.
Scenario from_reference(std::string_view reference);
bool is_builtin_reference(std::string_view reference);

/// Parses "100", "-2.5", "i", "-3i", "1+2i" and similar.
Complex parse_complex(std::string_view text);

/// Lossless JSON document.
std::string serialize(const Scenario &s);
Scenario deserialize(std::string_view text);
/// FNV-1a 64 of serialize(s).
std::uint64_t scenario_hash(const Scenario &s);

}  // namespace weakval::scenarios

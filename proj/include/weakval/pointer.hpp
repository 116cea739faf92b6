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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "weakval/linalg.hpp"

namespace weakval::pointer {

inline constexpr std::size_t kMinGridSize = std::size_t{1} << 8;
inline constexpr std::size_t kMaxGridSize = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultGridSize = 4096;
inline constexpr double kNormTolerance = 1e-8;
/// Largest |psi| tolerated in the outermost 1% of the grid.
inline constexpr double kBoundaryAmplitude = 1e-6;
/// Gaussians need this many widths of grid on each side of their center.
inline constexpr double kGaussianMargin = 8.0;

/// Uniform periodic position grid q_k = q_min + k * spacing, k = 0 .. n-1,
/// with spacing = (q_max - q_min) / n.
///
/// The conjugate momentum lattice has spacing 2 pi / (n * spacing) and is
/// reported centered on zero: index j maps to (j - n/2) * momentum_spacing().
class PointerGrid {
   public:
    PointerGrid(std::size_t n, double q_min, double q_max);

    static PointerGrid symmetric(std::size_t n, double half_extent);
    /// Grid for a Gaussian pointer of width delta that will be translated by at
    /// most max_shift: extent +-(8 delta + 2 max_shift), with n doubled from
    /// min_n until the spacing resolves delta / 8.
    static PointerGrid for_coupling(double delta, double max_shift, std::size_t min_n = kDefaultGridSize);

    std::size_t n() const noexcept { return n_; }
    double q_min() const noexcept { return q_min_; }
    double q_max() const noexcept { return q_max_; }
    double extent() const noexcept { return q_max_ - q_min_; }
    double spacing() const noexcept { return (q_max_ - q_min_) / static_cast<double>(n_); }
    double position(std::size_t k) const noexcept { return q_min_ + static_cast<double>(k) * spacing(); }
    double momentum_spacing() const noexcept;
    /// Centered momentum lattice value for index j in [0, n).
    double momentum(std::size_t j) const noexcept;

    bool operator==(const PointerGrid &other) const = default;

   private:
    std::size_t n_;
    double q_min_;
    double q_max_;
};

/// Pointer wavefunction sampled on a PointerGrid. Construction enforces unit
/// quadrature norm (to kNormTolerance) and a quiet boundary.
class PointerState {
   public:
    PointerState(PointerGrid grid, std::vector<Complex> samples);

    const PointerGrid &grid() const noexcept { return grid_; }
    const std::vector<Complex> &samples() const noexcept { return samples_; }
    /// |psi(q_k)|^2, without the spacing factor.
    std::vector<double> density() const;

   private:
    PointerGrid grid_;
    std::vector<Complex> samples_;
};

/// Integrated coupling strength g and initial pointer width delta.
struct CouplingConfig {
    double g = 0.0;
    double delta = 1.0;

    /// Throws InputError unless g is finite and delta is finite and positive.
    void validate() const;
};

/// (delta^2 pi)^(-1/4) exp(-(q - center)^2 / (2 delta^2)), renormalized on the grid.
PointerState make_gaussian(const PointerGrid &grid, double delta, double center);

/// psi(q - shift), applied as a momentum-space phase exp(-i p shift).
PointerState translate(const PointerState &state, double shift);

/// One eigenvalue cluster of the coupled operator after the impulse.
struct Branch {
    double eigenvalue;
    linalg::ComplexVector component;  // projection of the system state onto the eigenspace
    double weight;                    // squared norm of component
    PointerState pointer;             // initial pointer translated by g * eigenvalue
};

/// Entangled system-pointer state exp(-i g O x P) (|psi> x pointer).
struct JointState {
    linalg::EigenDecomposition basis;
    std::vector<Branch> branches;

    double norm_squared() const;
};

JointState couple(const linalg::ComplexVector &psi, const PointerState &pointer,
                  const linalg::ComplexMatrix &o, double g);

/// Pointer density |psi(q_k)|^2 with the system left unobserved:
/// sum over branches of weight * |pointer_branch|^2.
std::vector<double> unconditioned_density(const JointState &joint);

struct PostSelected {
    PointerState pointer;  // renormalized conditional pointer state
    double probability;
};

/// Conditions the joint state on finding the system in |phi>.
PostSelected post_select(const JointState &joint, const linalg::ComplexVector &phi);

double mean_Q(const PointerState &p);
double var_Q(const PointerState &p);
double mean_P(const PointerState &p);
double var_P(const PointerState &p);

/// Momentum-space density on the centered lattice, normalized so that
/// sum(density) * momentum_spacing equals the position-space norm.
struct MomentumDensity {
    std::vector<double> momentum;
    std::vector<double> density;
    double spacing;
};
MomentumDensity momentum_density(const PointerState &p);

double position_norm_squared(const PointerState &p);
double momentum_norm_squared(const PointerState &p);

/// |<reference|p>|^2 against the analytic Gaussian of width delta centered at
/// reference_shift. Clamped to [0, 1].
double aav_fidelity(const PointerState &p, double reference_shift, double delta);

/// Exact reduced state of one pointer: sum_l weight_l |state_l><state_l|.
struct MixedPointerState {
    std::vector<double> weights;
    std::vector<PointerState> components;

    std::vector<double> density() const;
};

double mean_Q(const MixedPointerState &p);
double var_Q(const MixedPointerState &p);
double mean_P(const MixedPointerState &p);

struct Coupling {
    linalg::ComplexMatrix o;
    double g;
    PointerState pointer;
};

struct SequentialResult {
    std::vector<MixedPointerState> pointers;  // same order as the couplings
    double probability;
};

/// Applies each impulse coupling in order to its own pointer, post-selects the
/// system on |phi> and returns every pointer's reduced state.
SequentialResult sequential_couple(const linalg::ComplexVector &psi, std::span<const Coupling> couplings,
                                   const linalg::ComplexVector &phi);

/// Two columns: q, |psi|^2.
void write_density(std::ostream &out, const PointerState &p, std::string_view header = {});
/// Four columns: q, Re psi, Im psi, |psi|^2.
void write_wavefunction(std::ostream &out, const PointerState &p, std::string_view header = {});
/// Two columns: p, momentum density.
void write_momentum_density(std::ostream &out, const PointerState &p, std::string_view header = {});

}  // namespace weakval::pointer

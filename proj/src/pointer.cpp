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

#include "weakval/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "fft.hpp"
#include "weakval/errors.hpp"

namespace weakval::pointer {

namespace {

constexpr double kStateTolerance = 1e-10;
// Post-selection is impossible when the coherent probability has cancelled to
// this fraction of the incoherent sum (|amplitude| ratio 1e-12).
constexpr double kRelativeCancellation = 1e-24;
constexpr double kMinProbability = 1e-300;
// Mixture components lighter than this fraction of the total are dropped.
constexpr double kComponentCutoff = 1e-14;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string to_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double quadrature_norm_squared(const std::vector<Complex> &samples, double spacing) {
    double sum = 0;
    for (const Complex &z : samples) {
        sum += std::norm(z);
    }
    return sum * spacing;
}

void require_state(const linalg::ComplexVector &v, std::size_t dim, const char *what) {
    if (v.size() != dim) {
        throw InputError(std::string(what) + " has dimension " + std::to_string(v.size()) + ", expected " +
                         std::to_string(dim));
    }
    if (!v.is_normalized(kStateTolerance)) {
        throw InputError(std::string(what) + " is not normalized");
    }
}

void require_finite_strength(double g) {
    if (!std::isfinite(g)) {
        throw InputError("coupling strength g must be finite");
    }
}

// Translation by g * o_i must stay within a quarter of the grid extent.
void require_shift_guard(const PointerGrid &grid, double max_shift) {
    if (max_shift > grid.extent() / 4) {
        throw GridGuardError("pointer shift " + to_text(max_shift) + " exceeds a quarter of the grid extent " +
                             to_text(grid.extent()) + "; increase the grid extent (--grid-extent)");
    }
}

std::vector<Complex> translated_samples(const PointerState &state, double shift) {
    const PointerGrid &grid = state.grid();
    const std::size_t n = grid.n();
    std::vector<Complex> spectrum = detail::forward_dft(state.samples());
    const double dp = grid.momentum_spacing();
    for (std::size_t j = 0; j < n; ++j) {
        double index = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
        double p = index * dp;
        spectrum[j] *= std::polar(1.0, -p * shift);
    }
    std::vector<Complex> out = detail::backward_dft(spectrum);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Complex &z : out) {
        z *= inv_n;
    }
    return out;
}

// Checks the norm against what unitary evolution must have preserved, then
// removes the residual drift.
PointerState renormalized(const PointerGrid &grid, std::vector<Complex> samples, double expected_norm_sq,
                          const char *what) {
    double norm_sq = quadrature_norm_squared(samples, grid.spacing());
    if (std::abs(norm_sq - expected_norm_sq) > kNormTolerance) {
        throw ConvergenceError(std::string(what) + ": norm drifted from " + to_text(expected_norm_sq) + " to " +
                               to_text(norm_sq));
    }
    double scale = 1.0 / std::sqrt(norm_sq);
    for (Complex &z : samples) {
        z *= scale;
    }
    return PointerState(grid, std::move(samples));
}

template <typename Moment>
double position_moment(const PointerState &p, Moment f) {
    const PointerGrid &grid = p.grid();
    double num = 0;
    double den = 0;
    for (std::size_t k = 0; k < grid.n(); ++k) {
        double rho = std::norm(p.samples()[k]);
        num += f(grid.position(k)) * rho;
        den += rho;
    }
    return num / den;
}

void write_header(std::ostream &out, const PointerGrid &grid, std::string_view header, const char *columns) {
    if (!header.empty()) {
        out << header;
        if (header.back() != '\n') {
            out << '\n';
        }
    }
    out.precision(17);
    out << "# grid n=" << grid.n() << " q_min=" << grid.q_min() << " q_max=" << grid.q_max()
        << " spacing=" << grid.spacing() << '\n';
    out << "# columns: " << columns << '\n';
}

}  // namespace

PointerGrid::PointerGrid(std::size_t n, double q_min, double q_max) : n_(n), q_min_(q_min), q_max_(q_max) {
    if (!is_power_of_two(n) || n < kMinGridSize || n > kMaxGridSize) {
        throw InputError("grid size must be a power of two in [2^8, 2^20], got " + std::to_string(n));
    }
    if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_max > q_min)) {
        throw InputError("grid extent requires finite q_max > q_min");
    }
}

PointerGrid PointerGrid::symmetric(std::size_t n, double half_extent) {
    return PointerGrid(n, -half_extent, half_extent);
}

PointerGrid PointerGrid::for_coupling(double delta, double max_shift, std::size_t min_n) {
    if (!(delta > 0) || !std::isfinite(delta)) {
        throw InputError("pointer width delta must be positive");
    }
    double half = kGaussianMargin * delta + 2 * std::abs(max_shift);
    std::size_t n = std::max(min_n, kMinGridSize);
    while (2 * half / static_cast<double>(n) > delta / 8 && n < kMaxGridSize) {
        n *= 2;
    }
    return symmetric(n, half);
}

double PointerGrid::momentum_spacing() const noexcept {
    return 2 * std::numbers::pi / (static_cast<double>(n_) * spacing());
}

double PointerGrid::momentum(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * momentum_spacing();
}

PointerState::PointerState(PointerGrid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.n()) {
        throw InputError("pointer samples do not match the grid size");
    }
    for (const Complex &z : samples_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InputError("pointer state has a non-finite sample");
        }
    }
    double norm_sq = quadrature_norm_squared(samples_, grid_.spacing());
    if (std::abs(norm_sq - 1.0) > kNormTolerance) {
        throw InputError("pointer state is not normalized (norm^2 " + to_text(norm_sq) + ")");
    }
    const std::size_t edge = std::max<std::size_t>(1, grid_.n() / 100);
    for (std::size_t k = 0; k < edge; ++k) {
        if (std::abs(samples_[k]) >= kBoundaryAmplitude ||
            std::abs(samples_[grid_.n() - 1 - k]) >= kBoundaryAmplitude) {
            throw GridGuardError("pointer amplitude reaches the grid boundary; increase the grid extent (--grid-extent)");
        }
    }
}

std::vector<double> PointerState::density() const {
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(), [](Complex z) { return std::norm(z); });
    return out;
}

void CouplingConfig::validate() const {
    require_finite_strength(g);
    if (!std::isfinite(delta) || !(delta > 0)) {
        throw InputError("pointer width delta must be finite and positive");
    }
}

PointerState make_gaussian(const PointerGrid &grid, double delta, double center) {
    if (!std::isfinite(delta) || !(delta > 0) || !std::isfinite(center)) {
        throw InputError("make_gaussian: delta must be positive and center finite");
    }
    if (center - kGaussianMargin * delta < grid.q_min() || center + kGaussianMargin * delta > grid.q_max()) {
        throw GridGuardError("make_gaussian: grid must extend 8 delta on each side of the center; increase the grid "
                             "extent (--grid-extent)");
    }
    if (grid.spacing() > delta) {
        throw GridGuardError("make_gaussian: grid spacing " + to_text(grid.spacing()) +
                             " does not resolve delta; increase the grid size (--grid-n)");
    }
    const double amplitude = std::pow(delta * delta * std::numbers::pi, -0.25);
    std::vector<Complex> samples(grid.n());
    for (std::size_t k = 0; k < grid.n(); ++k) {
        double x = (grid.position(k) - center) / delta;
        samples[k] = amplitude * std::exp(-0.5 * x * x);
    }
    double scale = 1.0 / std::sqrt(quadrature_norm_squared(samples, grid.spacing()));
    for (Complex &z : samples) {
        z *= scale;
    }
    return PointerState(grid, std::move(samples));
}

PointerState translate(const PointerState &state, double shift) {
    if (!std::isfinite(shift)) {
        throw InputError("translate: shift must be finite");
    }
    if (shift == 0.0) {
        return state;
    }
    return renormalized(state.grid(), translated_samples(state, shift), 1.0, "translate");
}

double JointState::norm_squared() const {
    double sum = 0;
    for (const Branch &b : branches) {
        sum += b.weight * position_norm_squared(b.pointer);
    }
    return sum;
}

JointState couple(const linalg::ComplexVector &psi, const PointerState &pointer, const linalg::ComplexMatrix &o,
                  double g) {
    require_finite_strength(g);
    require_state(psi, o.dim(), "system state");
    JointState joint{linalg::eig_hermitian(o), {}};
    std::vector<linalg::EigenCluster> clusters = linalg::cluster_eigenvalues(joint.basis);

    double max_shift = 0;
    for (const linalg::EigenCluster &c : clusters) {
        max_shift = std::max(max_shift, std::abs(g * c.eigenvalue));
    }
    require_shift_guard(pointer.grid(), max_shift);

    for (const linalg::EigenCluster &c : clusters) {
        linalg::ComplexVector component = linalg::project(joint.basis, c, psi);
        double weight = component.norm() * component.norm();
        joint.branches.push_back({c.eigenvalue, std::move(component), weight, translate(pointer, g * c.eigenvalue)});
    }
    double norm_sq = joint.norm_squared();
    if (std::abs(norm_sq - 1.0) > kNormTolerance) {
        throw ConvergenceError("couple: joint norm drifted to " + to_text(norm_sq));
    }
    return joint;
}

std::vector<double> unconditioned_density(const JointState &joint) {
    if (joint.branches.empty()) {
        throw InputError("unconditioned_density: empty joint state");
    }
    std::vector<double> out(joint.branches.front().pointer.grid().n());
    for (const Branch &b : joint.branches) {
        const std::vector<Complex> &s = b.pointer.samples();
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += b.weight * std::norm(s[k]);
        }
    }
    return out;
}

PostSelected post_select(const JointState &joint, const linalg::ComplexVector &phi) {
    if (joint.branches.empty()) {
        throw InputError("post_select: empty joint state");
    }
    require_state(phi, joint.basis.dim(), "post-selected state");
    const PointerGrid &grid = joint.branches.front().pointer.grid();
    std::vector<Complex> conditional(grid.n());
    double incoherent = 0;
    for (const Branch &b : joint.branches) {
        Complex amplitude = linalg::inner_product(phi, b.component);
        incoherent += std::norm(amplitude);
        if (amplitude == Complex(0)) {
            continue;
        }
        const std::vector<Complex> &s = b.pointer.samples();
        for (std::size_t k = 0; k < grid.n(); ++k) {
            conditional[k] += amplitude * s[k];
        }
    }
    double probability = quadrature_norm_squared(conditional, grid.spacing());
    if (!(probability >= kMinProbability) || probability <= kRelativeCancellation * incoherent) {
        throw PostSelectionImpossible("post-selection probability " + to_text(probability) +
                                      " is numerically zero");
    }
    double scale = 1.0 / std::sqrt(probability);
    for (Complex &z : conditional) {
        z *= scale;
    }
    return {PointerState(grid, std::move(conditional)), std::min(probability, 1.0)};
}

double mean_Q(const PointerState &p) {
    return position_moment(p, [](double q) { return q; });
}

double var_Q(const PointerState &p) {
    double mean = mean_Q(p);
    return position_moment(p, [mean](double q) { return (q - mean) * (q - mean); });
}

MomentumDensity momentum_density(const PointerState &p) {
    const PointerGrid &grid = p.grid();
    const std::size_t n = grid.n();
    std::vector<Complex> spectrum = detail::forward_dft(p.samples());
    const double scale = grid.spacing() * grid.spacing() / (2 * std::numbers::pi);
    MomentumDensity out{std::vector<double>(n), std::vector<double>(n), grid.momentum_spacing()};
    for (std::size_t j = 0; j < n; ++j) {
        // Centered index j holds DFT bin (j + n/2) mod n.
        std::size_t bin = (j + n / 2) % n;
        out.momentum[j] = grid.momentum(j);
        out.density[j] = std::norm(spectrum[bin]) * scale;
    }
    return out;
}

double mean_P(const PointerState &p) {
    MomentumDensity m = momentum_density(p);
    double num = 0;
    double den = 0;
    for (std::size_t j = 0; j < m.density.size(); ++j) {
        num += m.momentum[j] * m.density[j];
        den += m.density[j];
    }
    return num / den;
}

double var_P(const PointerState &p) {
    MomentumDensity m = momentum_density(p);
    double den = 0;
    double first = 0;
    for (std::size_t j = 0; j < m.density.size(); ++j) {
        first += m.momentum[j] * m.density[j];
        den += m.density[j];
    }
    double mean = first / den;
    double second = 0;
    for (std::size_t j = 0; j < m.density.size(); ++j) {
        second += (m.momentum[j] - mean) * (m.momentum[j] - mean) * m.density[j];
    }
    return second / den;
}

double position_norm_squared(const PointerState &p) {
    return quadrature_norm_squared(p.samples(), p.grid().spacing());
}

double momentum_norm_squared(const PointerState &p) {
    MomentumDensity m = momentum_density(p);
    double sum = 0;
    for (double d : m.density) {
        sum += d;
    }
    return sum * m.spacing;
}

double aav_fidelity(const PointerState &p, double reference_shift, double delta) {
    if (!std::isfinite(delta) || !(delta > 0) || !std::isfinite(reference_shift)) {
        throw InputError("aav_fidelity: delta must be positive and the reference shift finite");
    }
    const PointerGrid &grid = p.grid();
    const double amplitude = std::pow(delta * delta * std::numbers::pi, -0.25);
    Complex overlap = 0;
    for (std::size_t k = 0; k < grid.n(); ++k) {
        double x = (grid.position(k) - reference_shift) / delta;
        overlap += amplitude * std::exp(-0.5 * x * x) * p.samples()[k];
    }
    overlap *= grid.spacing();
    return std::clamp(std::norm(overlap) / position_norm_squared(p), 0.0, 1.0);
}

std::vector<double> MixedPointerState::density() const {
    std::vector<double> out(components.front().grid().n());
    for (std::size_t l = 0; l < components.size(); ++l) {
        const std::vector<Complex> &s = components[l].samples();
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += weights[l] * std::norm(s[k]);
        }
    }
    return out;
}

double mean_Q(const MixedPointerState &p) {
    double sum = 0;
    for (std::size_t l = 0; l < p.components.size(); ++l) {
        sum += p.weights[l] * mean_Q(p.components[l]);
    }
    return sum;
}

double var_Q(const MixedPointerState &p) {
    double mean = mean_Q(p);
    double sum = 0;
    for (std::size_t l = 0; l < p.components.size(); ++l) {
        double m = mean_Q(p.components[l]);
        sum += p.weights[l] * (var_Q(p.components[l]) + (m - mean) * (m - mean));
    }
    return sum;
}

double mean_P(const MixedPointerState &p) {
    double sum = 0;
    for (std::size_t l = 0; l < p.components.size(); ++l) {
        sum += p.weights[l] * mean_P(p.components[l]);
    }
    return sum;
}

SequentialResult sequential_couple(const linalg::ComplexVector &psi, std::span<const Coupling> couplings,
                                   const linalg::ComplexVector &phi) {
    if (couplings.empty()) {
        throw InputError("sequential_couple: no couplings");
    }
    const std::size_t dim = psi.size();
    require_state(psi, dim, "system state");
    require_state(phi, dim, "post-selected state");

    // Per coupling: eigenspaces, translated pointer copies and their Gram matrix
    // gram[a * r + b] = <s_b|s_a>.
    struct Stage {
        linalg::EigenDecomposition basis;
        std::vector<linalg::EigenCluster> clusters;
        std::vector<PointerState> shifted;
        std::vector<Complex> gram;
    };
    std::vector<Stage> stages;
    std::size_t paths = 1;
    for (const Coupling &c : couplings) {
        require_finite_strength(c.g);
        if (c.o.dim() != dim) {
            throw InputError("sequential_couple: operator dimension does not match the system");
        }
        Stage stage{linalg::eig_hermitian(c.o), {}, {}, {}};
        stage.clusters = linalg::cluster_eigenvalues(stage.basis);
        double max_abs_eigenvalue = 0;
        for (double v : stage.basis.eigenvalues) {
            max_abs_eigenvalue = std::max(max_abs_eigenvalue, std::abs(v));
        }
        double width = std::sqrt(2 * var_Q(c.pointer));
        if (std::abs(c.g) * max_abs_eigenvalue > width / 10) {
            throw Error(ErrorKind::kNumericalGuard, "sequential_couple: coupling violates the weak-regime guard "
                                                    "g * max|o| <= delta / 10");
        }
        require_shift_guard(c.pointer.grid(), std::abs(c.g) * max_abs_eigenvalue);
        const std::size_t r = stage.clusters.size();
        if (paths > linalg::kMaxTensorDim / (r * dim)) {
            throw DimensionCapError("sequential_couple: joint dimension exceeds 2^24");
        }
        paths *= r;
        for (const linalg::EigenCluster &cluster : stage.clusters) {
            stage.shifted.push_back(translate(c.pointer, c.g * cluster.eigenvalue));
        }
        const double dq = c.pointer.grid().spacing();
        stage.gram.resize(r * r);
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = 0; b < r; ++b) {
                Complex sum = 0;
                const auto &sa = stage.shifted[a].samples();
                const auto &sb = stage.shifted[b].samples();
                for (std::size_t k = 0; k < sa.size(); ++k) {
                    sum += std::conj(sb[k]) * sa[k];
                }
                stage.gram[a * r + b] = sum * dq;
            }
        }
        stages.push_back(std::move(stage));
    }

    // System vectors for every path (i_1, ..., i_K), first coupling most
    // significant, then amplitudes A = <phi| Pi_K ... Pi_1 |psi>.
    std::vector<linalg::ComplexVector> vectors{psi};
    for (const Stage &stage : stages) {
        std::vector<linalg::ComplexVector> next;
        next.reserve(vectors.size() * stage.clusters.size());
        for (const linalg::ComplexVector &v : vectors) {
            for (const linalg::EigenCluster &cluster : stage.clusters) {
                next.push_back(linalg::project(stage.basis, cluster, v));
            }
        }
        vectors = std::move(next);
    }
    std::vector<Complex> amplitude(paths);
    double incoherent = 0;
    for (std::size_t i = 0; i < paths; ++i) {
        amplitude[i] = linalg::inner_product(phi, vectors[i]);
        incoherent += std::norm(amplitude[i]);
    }
    vectors.clear();

    std::vector<std::vector<std::size_t>> labels(paths, std::vector<std::size_t>(stages.size()));
    for (std::size_t i = 0; i < paths; ++i) {
        std::size_t rest = i;
        for (std::size_t k = stages.size(); k-- > 0;) {
            labels[i][k] = rest % stages[k].clusters.size();
            rest /= stages[k].clusters.size();
        }
    }

    SequentialResult result{{}, 0.0};
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const Stage &stage = stages[k];
        const std::size_t r = stage.clusters.size();
        // coefficients[a * r + b] = <R_b|R_a>, the overlap of everything else
        // attached to branches a and b of this pointer.
        std::vector<Complex> coefficients(r * r);
        for (std::size_t i = 0; i < paths; ++i) {
            if (amplitude[i] == Complex(0)) {
                continue;
            }
            for (std::size_t j = 0; j < paths; ++j) {
                if (amplitude[j] == Complex(0)) {
                    continue;
                }
                Complex term = amplitude[i] * std::conj(amplitude[j]);
                for (std::size_t m = 0; m < stages.size(); ++m) {
                    if (m != k) {
                        std::size_t rm = stages[m].clusters.size();
                        term *= stages[m].gram[labels[i][m] * rm + labels[j][m]];
                    }
                }
                coefficients[labels[i][k] * r + labels[j][k]] += term;
            }
        }
        double probability = 0;
        for (std::size_t ab = 0; ab < r * r; ++ab) {
            probability += (coefficients[ab] * stage.gram[ab]).real();
        }
        if (k == 0) {
            if (!(probability >= kMinProbability) || probability <= kRelativeCancellation * incoherent) {
                throw PostSelectionImpossible("sequential_couple: post-selection probability " +
                                              to_text(probability) + " is numerically zero");
            }
            result.probability = std::min(probability, 1.0);
        }

        std::vector<Complex> hermitian(r * r);
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = 0; b < r; ++b) {
                hermitian[a * r + b] = 0.5 * (coefficients[a * r + b] + std::conj(coefficients[b * r + a]));
            }
        }
        linalg::EigenDecomposition mix = linalg::eig_hermitian(linalg::ComplexMatrix(r, std::move(hermitian)));

        const PointerGrid &grid = stage.shifted.front().grid();
        MixedPointerState reduced;
        std::vector<std::vector<Complex>> raw;
        std::vector<double> raw_weight;
        for (std::size_t l = r; l-- > 0;) {
            double lambda = mix.eigenvalues[l];
            if (!(lambda > 0)) {
                continue;
            }
            std::vector<Complex> samples(grid.n());
            for (std::size_t a = 0; a < r; ++a) {
                Complex u = mix.eigenvectors[l][a];
                const auto &s = stage.shifted[a].samples();
                for (std::size_t q = 0; q < grid.n(); ++q) {
                    samples[q] += u * s[q];
                }
            }
            raw_weight.push_back(lambda * quadrature_norm_squared(samples, grid.spacing()));
            raw.push_back(std::move(samples));
        }
        double total = 0;
        for (double w : raw_weight) {
            total += w;
        }
        for (std::size_t l = 0; l < raw.size(); ++l) {
            if (raw_weight[l] <= kComponentCutoff * total) {
                continue;
            }
            double scale = 1.0 / std::sqrt(quadrature_norm_squared(raw[l], grid.spacing()));
            for (Complex &z : raw[l]) {
                z *= scale;
            }
            reduced.weights.push_back(raw_weight[l]);
            reduced.components.emplace_back(grid, std::move(raw[l]));
        }
        double kept = 0;
        for (double w : reduced.weights) {
            kept += w;
        }
        for (double &w : reduced.weights) {
            w /= kept;
        }
        result.pointers.push_back(std::move(reduced));
    }
    return result;
}

void write_density(std::ostream &out, const PointerState &p, std::string_view header) {
    write_header(out, p.grid(), header, "q density");
    for (std::size_t k = 0; k < p.grid().n(); ++k) {
        out << p.grid().position(k) << ' ' << std::norm(p.samples()[k]) << '\n';
    }
}

void write_wavefunction(std::ostream &out, const PointerState &p, std::string_view header) {
    write_header(out, p.grid(), header, "q re_psi im_psi density");
    for (std::size_t k = 0; k < p.grid().n(); ++k) {
        Complex z = p.samples()[k];
        out << p.grid().position(k) << ' ' << z.real() << ' ' << z.imag() << ' ' << std::norm(z) << '\n';
    }
}

void write_momentum_density(std::ostream &out, const PointerState &p, std::string_view header) {
    write_header(out, p.grid(), header, "p density");
    MomentumDensity m = momentum_density(p);
    for (std::size_t j = 0; j < m.density.size(); ++j) {
        out << m.momentum[j] << ' ' << m.density[j] << '\n';
    }
}

}  // namespace weakval::pointer

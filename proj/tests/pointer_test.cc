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

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "weakval/errors.hpp"
#include "weakval/tsvf.hpp"

using namespace weakval;
using namespace weakval::pointer;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using weakval::testing::two_branch_mean_q;

namespace {

const double kR2 = 1 / std::sqrt(2.0);
const double kR3 = 1 / std::sqrt(3.0);

PostSelected simulate(const ComplexVector &pre, const ComplexVector &post, const ComplexMatrix &o, double g,
                      double delta, std::size_t n = kDefaultGridSize) {
    double max_shift = std::abs(g) * o.max_abs();
    PointerGrid grid = PointerGrid::for_coupling(delta, max_shift, n);
    return post_select(couple(pre, make_gaussian(grid, delta, 0), o, g), post);
}

ComplexVector spin_post(double target) { return ComplexVector{target + 1, 1 - target}.normalized(); }

ComplexMatrix box_projector(std::size_t box) {
    ComplexMatrix p = ComplexMatrix::zeros(3);
    p(box, box) = 1;
    return p;
}

double mass_within(const PointerGrid &grid, const std::vector<double> &density, double center, double half_width) {
    double mass = 0;
    for (std::size_t k = 0; k < grid.n(); ++k) {
        if (std::abs(grid.position(k) - center) <= half_width) {
            mass += density[k];
        }
    }
    return mass * grid.spacing();
}

double state_fidelity(const PointerState &a, const PointerState &b) {
    Complex overlap = 0;
    for (std::size_t k = 0; k < a.grid().n(); ++k) {
        overlap += std::conj(a.samples()[k]) * b.samples()[k];
    }
    return std::norm(overlap * a.grid().spacing());
}

}  // namespace

TEST(pointer, grid_validation) {
    EXPECT_THROW(PointerGrid(100, -1, 1), InputError);
    EXPECT_THROW(PointerGrid(128, -1, 1), InputError);
    EXPECT_THROW(PointerGrid(std::size_t{1} << 21, -1, 1), InputError);
    EXPECT_THROW(PointerGrid(256, 1, 1), InputError);
    PointerGrid grid(256, -4, 4);
    EXPECT_DOUBLE_EQ(grid.spacing(), 8.0 / 256);
    EXPECT_DOUBLE_EQ(grid.momentum_spacing(), 2 * M_PI / 8);
    EXPECT_DOUBLE_EQ(grid.momentum(128), 0);
    EXPECT_DOUBLE_EQ(grid.momentum(0), -128 * grid.momentum_spacing());
}

TEST(pointer, default_grid_rule) {
    PointerGrid grid = PointerGrid::for_coupling(2.0, 1.5);
    EXPECT_EQ(grid.n(), 4096u);
    EXPECT_DOUBLE_EQ(grid.q_max(), 8 * 2.0 + 2 * 1.5);
    // A narrow pointer with a large shift forces a finer grid.
    PointerGrid fine = PointerGrid::for_coupling(0.01, 100);
    EXPECT_LE(fine.spacing(), 0.01 / 8);
}

TEST(pointer, gaussian_moments) {
    PointerState p = make_gaussian(PointerGrid::symmetric(4096, 16), 1.0, 0.0);
    EXPECT_NEAR(mean_Q(p), 0, 1e-10);
    EXPECT_NEAR(var_Q(p), 0.5, 1e-6);
    EXPECT_NEAR(mean_P(p), 0, 1e-8);
    EXPECT_NEAR(var_P(p), 0.5, 0.5e-6);
    EXPECT_NEAR(var_Q(p) * var_P(p), 0.25, 1e-6);

    PointerState shifted = make_gaussian(PointerGrid::symmetric(4096, 16), 1.0, 3.0);
    EXPECT_NEAR(mean_Q(shifted), 3, shifted.grid().spacing() / 10);

    PointerState wide = make_gaussian(PointerGrid::symmetric(4096, 80), 5.0, 0.0);
    EXPECT_NEAR(var_P(wide), 1 / (2 * 25.0), 1e-6 / 50);
}

TEST(pointer, gaussian_requires_margin_and_resolution) {
    EXPECT_THROW(make_gaussian(PointerGrid::symmetric(4096, 7), 1.0, 0.0), GridGuardError);
    EXPECT_THROW(make_gaussian(PointerGrid::symmetric(4096, 16), 1.0, 9.0), GridGuardError);
    EXPECT_THROW(make_gaussian(PointerGrid::symmetric(256, 1000), 1.0, 0.0), GridGuardError);
    EXPECT_THROW(make_gaussian(PointerGrid::symmetric(4096, 16), 0.0, 0.0), InputError);
}

TEST(pointer, state_invariants) {
    PointerGrid grid = PointerGrid::symmetric(256, 8);
    EXPECT_THROW(PointerState(grid, std::vector<Complex>(256, 0.1)), InputError);
    std::vector<Complex> edge(256);
    edge[0] = 1 / std::sqrt(grid.spacing());
    EXPECT_THROW(PointerState(grid, edge), GridGuardError);
}

TEST(pointer, parseval) {
    std::mt19937_64 rng(3);
    PointerState p = make_gaussian(PointerGrid::symmetric(1024, 20), 1.5, 2.0);
    EXPECT_NEAR(position_norm_squared(p), momentum_norm_squared(p), 1e-12);
    PointerState moved = translate(p, -3.3);
    EXPECT_NEAR(position_norm_squared(moved), momentum_norm_squared(moved), 1e-12);
}

TEST(pointer, translate_is_exact_and_deterministic) {
    PointerState p = make_gaussian(PointerGrid::symmetric(4096, 30), 1.0, 0.0);
    PointerState a = translate(p, 2.345);
    PointerState b = translate(p, 2.345);
    EXPECT_EQ(a.samples(), b.samples());
    EXPECT_NEAR(mean_Q(a), 2.345, 1e-12);
    PointerState reference = make_gaussian(p.grid(), 1.0, 2.345);
    for (std::size_t k = 0; k < p.grid().n(); ++k) {
        EXPECT_NEAR(std::abs(a.samples()[k] - reference.samples()[k]), 0, 1e-12);
    }
}

TEST(pointer, couple_eigenstate_translates_single_branch) {
    PointerState p = make_gaussian(PointerGrid::symmetric(4096, 16), 1.0, 0.0);
    JointState joint = couple({0, 1}, p, linalg::pauli_z(), 0.7);
    int live = 0;
    for (const Branch &b : joint.branches) {
        if (b.weight > 0) {
            ++live;
            EXPECT_DOUBLE_EQ(b.eigenvalue, -1);
            EXPECT_NEAR(mean_Q(b.pointer), -0.7, p.grid().spacing() / 10);
        }
    }
    EXPECT_EQ(live, 1);
    EXPECT_NEAR(joint.norm_squared(), 1, 1e-12);
}

TEST(pointer, couple_with_zero_strength_is_identity) {
    std::mt19937_64 rng(5);
    ComplexVector psi = weakval::testing::random_state(rng, 3);
    ComplexMatrix o = weakval::testing::random_hermitian(rng, 3);
    PointerState p = make_gaussian(PointerGrid::symmetric(1024, 10), 1.0, 0.0);
    JointState joint = couple(psi, p, o, 0.0);
    std::vector<Complex> recombined(3);
    for (const Branch &b : joint.branches) {
        EXPECT_EQ(b.pointer.samples(), p.samples());
        for (std::size_t k = 0; k < 3; ++k) {
            recombined[k] += b.component[k];
        }
    }
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(std::abs(recombined[k] - psi[k]), 0, 1e-12);
    }
}

TEST(pointer, strong_coupling_is_bimodal_with_born_weights) {
    PointerState p = make_gaussian(PointerGrid::for_coupling(0.05, 1.0), 0.05, 0.0);
    JointState joint = couple({kR2, kR2}, p, linalg::pauli_z(), 1.0);
    std::vector<double> density = unconditioned_density(joint);
    auto born = tsvf::eigen_probabilities(linalg::pauli_z(), {kR2, kR2});
    EXPECT_NEAR(mass_within(p.grid(), density, -1, 3 * 0.05), born[0].probability, 1e-3);
    EXPECT_NEAR(mass_within(p.grid(), density, 1, 3 * 0.05), born[1].probability, 1e-3);
}

TEST(pointer, couple_guards) {
    PointerState p = make_gaussian(PointerGrid::symmetric(1024, 10), 1.0, 0.0);
    EXPECT_THROW(couple({1, 0}, p, linalg::pauli_z(), 6.0), GridGuardError);
    EXPECT_THROW(couple({1, 0}, p, ComplexMatrix{{0, 1}, {0, 0}}, 0.1), InputError);
    EXPECT_THROW(couple({1, 1}, p, linalg::pauli_z(), 0.1), InputError);
    // Within the quarter-extent guard but pushed into the boundary region.
    PointerState tight = make_gaussian(PointerGrid::symmetric(1024, 8), 1.0, 0.0);
    EXPECT_THROW(couple({1, 0}, tight, linalg::pauli_z(), 3.5), GridGuardError);
}

TEST(pointer, post_select_eigenstate) {
    PostSelected s = simulate({1, 0}, {1, 0}, linalg::pauli_z(), 0.4, 1.0);
    EXPECT_NEAR(s.probability, 1, 1e-12);
    EXPECT_NEAR(mean_Q(s.pointer), 0.4, s.pointer.grid().spacing() / 10);
}

TEST(pointer, post_select_orthogonal_without_coupling_is_impossible) {
    EXPECT_THROW(simulate({kR2, kR2}, {kR2, -kR2}, linalg::pauli_z(), 0.0, 1.0), PostSelectionImpossible);
    EXPECT_THROW(simulate({1, 0}, {0, 1}, linalg::pauli_z(), 0.3, 1.0), PostSelectionImpossible);
}

TEST(pointer, post_select_completeness) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t dim = 2 + trial % 4;
        ComplexVector psi = weakval::testing::random_state(rng, dim);
        ComplexMatrix o = weakval::testing::random_hermitian(rng, dim);
        PointerState p = make_gaussian(PointerGrid::for_coupling(1.0, 0.5 * 8), 1.0, 0.0);
        double g = 0.5 / std::max(1.0, o.max_abs());
        JointState joint = couple(psi, p, o, g);
        double total = 0;
        for (const ComplexVector &phi : weakval::testing::random_basis(rng, dim)) {
            total += post_select(joint, phi).probability;
        }
        EXPECT_NEAR(total, 1, 1e-8);
    }
}

TEST(pointer, three_box_box_c_shifts_opposite) {
    const double g = 0.1;
    const double delta = 5;
    PostSelected s = simulate({kR3, kR3, kR3}, {kR3, kR3, -kR3}, box_projector(2), g, delta);
    EXPECT_NEAR(mean_Q(s.pointer), -0.1, 0.005);
    // Branch amplitudes <Phi|Pi|Psi>: -1/3 for the box (shift g), 2/3 for the rest (no shift).
    EXPECT_NEAR(mean_Q(s.pointer), two_branch_mean_q(-1.0 / 3, g, 2.0 / 3, 0, delta), 1e-12);
}

TEST(pointer, spin_100_pointer_shift) {
    const double g = 1;
    const double delta = 1000;
    PostSelected s = simulate({kR2, kR2}, spin_post(100), linalg::pauli_z(), g, delta);
    EXPECT_NEAR(mean_Q(s.pointer), 100, 1);
    const double norm = std::sqrt(101.0 * 101 + 99.0 * 99);
    double expected = two_branch_mean_q(101 / norm * kR2, g, -99 / norm * kR2, -g, delta);
    EXPECT_NEAR(mean_Q(s.pointer), expected, 1e-8 * expected);
}

TEST(pointer, momentum_shift_coefficient_from_finite_differences) {
    // Oracle: d(mean_P)/dg at g -> 0, measured numerically, against 2 Im(O_w) var_P.
    const ComplexVector pre{kR2, kR2};
    const ComplexVector post{kR2, Complex(0, kR2)};
    const double delta = 10;
    Complex wv = tsvf::weak_value(linalg::pauli_z(), tsvf::TwoStateVector(pre, post));
    ASSERT_NEAR(wv.imag(), 1, 1e-15);
    PointerState initial = make_gaussian(PointerGrid::for_coupling(delta, 0.01), delta, 0);
    const double h = 1e-5;
    double slope = (mean_P(simulate(pre, post, linalg::pauli_z(), h, delta).pointer) -
                    mean_P(simulate(pre, post, linalg::pauli_z(), -h, delta).pointer)) /
                   (2 * h);
    double coefficient = slope / (wv.imag() * var_P(initial));
    EXPECT_NEAR(coefficient, 2.0, 2.0 * 1e-4);
}

TEST(pointer, imaginary_weak_value_moves_momentum_not_position) {
    const ComplexVector pre{kR2, kR2};
    const ComplexVector post{kR2, Complex(0, kR2)};
    for (double g : {1e-3, 1e-2}) {
        PostSelected s = simulate(pre, post, linalg::pauli_z(), g, 10);
        double predicted = 2 * g * 1.0 * var_P(s.pointer);
        EXPECT_NEAR(mean_P(s.pointer), predicted, 0.05 * predicted) << "g=" << g;
        EXPECT_LE(std::abs(mean_Q(s.pointer)), 1e-3 * g);
    }
}

TEST(pointer, aav_fidelity_examples) {
    PointerState exact = make_gaussian(PointerGrid::symmetric(4096, 40), 2.0, 7.5);
    EXPECT_GE(aav_fidelity(exact, 7.5, 2.0), 1 - 1e-8);
    EXPECT_LE(aav_fidelity(exact, 7.5, 2.0), 1.0);

    PostSelected weak = simulate({kR2, kR2}, spin_post(100), linalg::pauli_z(), 1, 1000);
    EXPECT_GE(aav_fidelity(weak.pointer, 100, 1000), 0.99);
    PostSelected strong = simulate({kR2, kR2}, spin_post(100), linalg::pauli_z(), 1, 5);
    EXPECT_LT(aav_fidelity(strong.pointer, 100, 5), 0.9);
}

TEST(pointer, aav_fidelity_grows_with_pointer_width) {
    double previous = -1;
    for (double delta : {5.0, 20.0, 100.0, 400.0, 1000.0}) {
        PostSelected s = simulate({kR2, kR2}, spin_post(100), linalg::pauli_z(), 1, delta);
        double f = aav_fidelity(s.pointer, 100, delta);
        EXPECT_GT(f, previous) << "delta=" << delta;
        previous = f;
    }
    EXPECT_GE(previous, 0.99);
}

TEST(pointer, weak_limit_convergence_order) {
    const double g = 0.1;
    const double target = 5;
    const double norm = std::sqrt((target + 1) * (target + 1) + (1 - target) * (1 - target));
    std::vector<double> errors;
    for (double delta : {4.0, 8.0, 16.0, 32.0, 64.0}) {
        PostSelected s = simulate({kR2, kR2}, spin_post(target), linalg::pauli_z(), g, delta);
        double err = std::abs(mean_Q(s.pointer) / g - target);
        double oracle = std::abs(
            two_branch_mean_q((target + 1) / norm * kR2, g, (1 - target) / norm * kR2, -g, delta) / g - target);
        EXPECT_NEAR(err, oracle, 1e-9 * target);
        errors.push_back(err);
    }
    std::vector<double> orders;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        EXPECT_LT(errors[k], errors[k - 1]);
        orders.push_back(std::log2(errors[k - 1] / errors[k]));
    }
    for (double order : orders) {
        EXPECT_NEAR(order, orders.front(), 0.5);
        EXPECT_NEAR(order, 2.0, 0.1);
    }
}

TEST(pointer, eigenstate_shift_is_exact_in_every_regime) {
    for (double g : {0.05, 1.0, 3.0}) {
        for (double delta : {0.1, 1.0, 10.0}) {
            PostSelected s = simulate({0, 1}, {0, 1}, linalg::pauli_z(), g, delta);
            EXPECT_NEAR(mean_Q(s.pointer), -g, s.pointer.grid().spacing() / 10) << g << " " << delta;
        }
    }
}

TEST(pointer, degenerate_operator_uses_one_branch_per_cluster) {
    PointerState p = make_gaussian(PointerGrid::symmetric(1024, 16), 1.0, 0.0);
    JointState joint = couple({kR3, kR3, kR3}, p, box_projector(0) + box_projector(1), 0.5);
    ASSERT_EQ(joint.branches.size(), 2u);
    EXPECT_NEAR(joint.branches[1].weight, 2.0 / 3, 1e-12);
}

TEST(pointer, unitarity_and_parseval_on_random_systems) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uniform(0.2, 1.5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t dim = 2 + trial % 4;
        ComplexVector psi = weakval::testing::random_state(rng, dim);
        ComplexMatrix o = weakval::testing::random_hermitian(rng, dim);
        double delta = uniform(rng);
        double g = uniform(rng) / std::max(1.0, o.max_abs());
        PointerState p = make_gaussian(PointerGrid::for_coupling(delta, g * dim * o.max_abs()), delta, 0);
        JointState joint = couple(psi, p, o, g);
        EXPECT_NEAR(joint.norm_squared(), 1, 1e-8);
        for (const Branch &b : joint.branches) {
            EXPECT_NEAR(position_norm_squared(b.pointer), momentum_norm_squared(b.pointer), 1e-8);
        }
        PostSelected s = post_select(joint, weakval::testing::random_state(rng, dim));
        EXPECT_NEAR(position_norm_squared(s.pointer), momentum_norm_squared(s.pointer), 1e-8);
    }
}

TEST(pointer, sequential_single_coupling_matches_couple_and_post_select) {
    const double g = 0.05;
    const double delta = 1;
    PointerState p = make_gaussian(PointerGrid::for_coupling(delta, g), delta, 0);
    ComplexVector pre{kR2, kR2};
    ComplexVector post = spin_post(3);
    PostSelected direct = post_select(couple(pre, p, linalg::pauli_z(), g), post);
    std::vector<Coupling> couplings{{linalg::pauli_z(), g, p}};
    SequentialResult seq = sequential_couple(pre, couplings, post);
    EXPECT_NEAR(seq.probability, direct.probability, 1e-10);
    ASSERT_EQ(seq.pointers.size(), 1u);
    ASSERT_EQ(seq.pointers[0].components.size(), 1u);
    EXPECT_NEAR(seq.pointers[0].weights[0], 1, 1e-10);
    EXPECT_NEAR(state_fidelity(seq.pointers[0].components[0], direct.pointer), 1, 1e-10);
    std::vector<double> d1 = seq.pointers[0].density();
    std::vector<double> d2 = direct.pointer.density();
    for (std::size_t k = 0; k < d1.size(); ++k) {
        EXPECT_NEAR(d1[k], d2[k], 1e-10);
    }
}

TEST(pointer, sequential_three_box_simultaneous_weak_couplings) {
    const double g = 0.01;
    const double delta = 1;
    PointerState p = make_gaussian(PointerGrid::for_coupling(delta, g), delta, 0);
    std::vector<Coupling> couplings{{box_projector(0), g, p}, {box_projector(1), g, p}, {box_projector(2), g, p}};
    SequentialResult seq = sequential_couple({kR3, kR3, kR3}, couplings, {kR3, kR3, -kR3});
    const double expected[] = {g, g, -g};
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(mean_Q(seq.pointers[k]), expected[k], 0.1 * g) << "box " << k;
    }
}

TEST(pointer, sequential_order_of_commuting_couplings_does_not_matter) {
    const double g = 0.02;
    PointerState p1 = make_gaussian(PointerGrid::for_coupling(1.0, g), 1.0, 0);
    PointerState p2 = make_gaussian(PointerGrid::for_coupling(0.8, g), 0.8, 0);
    ComplexVector pre{kR3, kR3, kR3};
    ComplexVector post{kR3, kR3, -kR3};
    std::vector<Coupling> forward{{box_projector(0), g, p1}, {box_projector(2), g, p2}};
    std::vector<Coupling> backward{{box_projector(2), g, p2}, {box_projector(0), g, p1}};
    SequentialResult a = sequential_couple(pre, forward, post);
    SequentialResult b = sequential_couple(pre, backward, post);
    EXPECT_NEAR(a.probability, b.probability, 1e-12);
    for (auto [ia, ib] : {std::pair{0, 1}, std::pair{1, 0}}) {
        std::vector<double> da = a.pointers[ia].density();
        std::vector<double> db = b.pointers[ib].density();
        for (std::size_t k = 0; k < da.size(); ++k) {
            EXPECT_NEAR(da[k], db[k], 1e-8);
        }
    }
}

TEST(pointer, sequential_marginal_is_mixed_and_normalized) {
    // Two couplings to non-commuting spin components entangle the pointers.
    const double g = 0.05;
    PointerState p = make_gaussian(PointerGrid::for_coupling(1.0, g), 1.0, 0);
    std::vector<Coupling> couplings{{linalg::pauli_x(), g, p}, {linalg::pauli_z(), g, p}};
    SequentialResult seq = sequential_couple({1, 0}, couplings, spin_post(2));
    for (const MixedPointerState &m : seq.pointers) {
        double total = 0;
        for (double w : m.weights) {
            EXPECT_GT(w, 0);
            total += w;
        }
        EXPECT_NEAR(total, 1, 1e-12);
        std::vector<double> d = m.density();
        double mass = 0;
        for (double x : d) {
            mass += x;
        }
        EXPECT_NEAR(mass * p.grid().spacing(), 1, 1e-10);
    }
}

TEST(pointer, sequential_guards) {
    PointerState p = make_gaussian(PointerGrid::for_coupling(1.0, 1.0), 1.0, 0);
    std::vector<Coupling> strong{{linalg::pauli_z(), 0.5, p}};
    EXPECT_THROW(sequential_couple({kR2, kR2}, strong, {kR2, kR2}), Error);
    std::vector<Coupling> weak{{linalg::pauli_z(), 0.01, p}};
    EXPECT_THROW(sequential_couple({1, 0}, weak, {0, 1}), PostSelectionImpossible);
    EXPECT_THROW(sequential_couple({1, 0}, std::vector<Coupling>{}, {1, 0}), InputError);

    std::mt19937_64 rng(1);
    PointerState small = make_gaussian(PointerGrid::symmetric(256, 10), 1.0, 0);
    ComplexMatrix o = weakval::testing::random_hermitian(rng, 5);
    std::vector<Coupling> many(11, Coupling{o, 1e-3, small});
    EXPECT_THROW(sequential_couple(weakval::testing::random_state(rng, 5), many,
                                   weakval::testing::random_state(rng, 5)),
                 DimensionCapError);
}

TEST(pointer, export_formats) {
    PointerState p = make_gaussian(PointerGrid::symmetric(256, 10), 1.0, 0);
    std::ostringstream two;
    write_density(two, p, "# test header");
    std::istringstream in(two.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# test header");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# grid n=256 q_min=-10 q_max=10 spacing=", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "# columns: q density");
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        double q, d;
        ASSERT_TRUE(fields >> q >> d);
        ++rows;
    }
    EXPECT_EQ(rows, 256);

    std::ostringstream four;
    write_wavefunction(four, p);
    std::istringstream in4(four.str());
    std::getline(in4, line);
    std::getline(in4, line);
    EXPECT_EQ(line, "# columns: q re_psi im_psi density");
    std::getline(in4, line);
    std::istringstream fields(line);
    double q, re, im, d;
    ASSERT_TRUE(fields >> q >> re >> im >> d);
    EXPECT_DOUBLE_EQ(q, -10);

    std::ostringstream momentum;
    write_momentum_density(momentum, p);
    EXPECT_NE(momentum.str().find("# columns: p density"), std::string::npos);
}

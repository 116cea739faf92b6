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

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "weakval/linalg.hpp"

namespace weakval::testing {

using linalg::ComplexMatrix;
using linalg::ComplexVector;

inline ComplexVector random_vector(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> normal;
    std::vector<Complex> v(dim);
    for (Complex &z : v) {
        z = {normal(rng), normal(rng)};
    }
    return ComplexVector(std::move(v));
}

inline ComplexVector random_state(std::mt19937_64 &rng, std::size_t dim) {
    return random_vector(rng, dim).normalized();
}

inline ComplexMatrix random_hermitian(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> normal;
    ComplexMatrix m = ComplexMatrix::zeros(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        m(r, r) = normal(rng);
        for (std::size_t c = r + 1; c < dim; ++c) {
            Complex z{normal(rng), normal(rng)};
            m(r, c) = z;
            m(c, r) = std::conj(z);
        }
    }
    return m;
}

/// Orthonormal basis by Gram-Schmidt over random vectors.
inline std::vector<ComplexVector> random_basis(std::mt19937_64 &rng, std::size_t dim) {
    std::vector<ComplexVector> basis;
    while (basis.size() < dim) {
        ComplexVector v = random_vector(rng, dim);
        for (const ComplexVector &b : basis) {
            v = v - b * linalg::inner_product(b, v);
        }
        basis.push_back(v.normalized());
    }
    return basis;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) { return (a - b).max_abs(); }

/// Closed-form mean position of a phi(q - s1) + b phi(q - s2) for the real
/// Gaussian phi of width delta. Overlap of the two copies is
/// exp(-(s1 - s2)^2 / (4 delta^2)), and the mean of their product is (s1 + s2) / 2.
inline double two_branch_mean_q(Complex a, double s1, Complex b, double s2, double delta) {
    double overlap = std::exp(-(s1 - s2) * (s1 - s2) / (4 * delta * delta));
    double cross = 2 * (a * std::conj(b)).real() * overlap;
    double num = std::norm(a) * s1 + std::norm(b) * s2 + cross * 0.5 * (s1 + s2);
    double den = std::norm(a) + std::norm(b) + cross;
    return num / den;
}

}  // namespace weakval::testing

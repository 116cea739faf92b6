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

#include <vector>

#include "weakval/linalg.hpp"

namespace weakval::tsvf {

inline constexpr double kNormalizationTolerance = 1e-10;
/// |<Phi|Psi>| at or below this leaves the weak value undefined.
inline constexpr double kOrthogonalityThreshold = 1e-12;

/// A pre-selected state |Psi> together with a post-selected state <Phi|.
///
/// The post-selected state is stored as the ket |Phi> and conjugated where it
/// is used, so overlap() is <Phi|Psi> = sum conj(phi_k) psi_k. Callers supply
/// |Phi>, never its conjugate.
class TwoStateVector {
   public:
    /// Throws InputError for unnormalized or mismatched states and
    /// UndefinedWeakValue when the states are orthogonal.
    TwoStateVector(linalg::ComplexVector pre, linalg::ComplexVector post);

    const linalg::ComplexVector &pre() const noexcept { return pre_; }
    const linalg::ComplexVector &post() const noexcept { return post_; }
    Complex overlap() const noexcept { return overlap_; }
    std::size_t dim() const noexcept { return pre_.size(); }

   private:
    linalg::ComplexVector pre_;
    linalg::ComplexVector post_;
    Complex overlap_;
};

/// <Phi|O|Psi> / <Phi|Psi>. Unclamped: the result may lie far outside the
/// eigenvalue range of O.
Complex weak_value(const linalg::ComplexMatrix &o, const TwoStateVector &tsv);

/// <Psi|O|Psi> for a normalized psi.
double expectation(const linalg::ComplexMatrix &o, const linalg::ComplexVector &psi);

struct OutcomeProbability {
    double eigenvalue;
    double probability;
};

/// Born probabilities for each distinct eigenvalue of o, ascending by eigenvalue.
/// Degenerate eigenvalues are merged into a single entry.
std::vector<OutcomeProbability> eigen_probabilities(const linalg::ComplexMatrix &o,
                                                    const linalg::ComplexVector &psi);

}  // namespace weakval::tsvf

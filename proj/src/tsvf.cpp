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

#include "weakval/tsvf.hpp"

#include <cmath>
#include <string>

#include "weakval/errors.hpp"

namespace weakval::tsvf {

namespace {

void require_normalized(const linalg::ComplexVector &v, const char *what) {
    if (!v.is_normalized(kNormalizationTolerance)) {
        throw InputError(std::string(what) + " is not normalized (norm " + std::to_string(v.norm()) + ")");
    }
}

void require_hermitian(const linalg::ComplexMatrix &o) {
    if (!o.is_hermitian()) {
        throw InputError("operator is not Hermitian");
    }
}

}  // namespace

TwoStateVector::TwoStateVector(linalg::ComplexVector pre, linalg::ComplexVector post)
    : pre_(std::move(pre)), post_(std::move(post)) {
    if (pre_.size() != post_.size()) {
        throw InputError("pre- and post-selected states differ in dimension");
    }
    require_normalized(pre_, "pre-selected state");
    require_normalized(post_, "post-selected state");
    overlap_ = linalg::inner_product(post_, pre_);
    if (std::abs(overlap_) <= kOrthogonalityThreshold) {
        throw UndefinedWeakValue("pre- and post-selected states are orthogonal: |<Phi|Psi>| = " +
                                 std::to_string(std::abs(overlap_)));
    }
}

Complex weak_value(const linalg::ComplexMatrix &o, const TwoStateVector &tsv) {
    if (o.dim() != tsv.dim()) {
        throw InputError("weak_value: operator and states differ in dimension");
    }
    require_hermitian(o);
    return linalg::inner_product(tsv.post(), linalg::apply(o, tsv.pre())) / tsv.overlap();
}

double expectation(const linalg::ComplexMatrix &o, const linalg::ComplexVector &psi) {
    require_hermitian(o);
    require_normalized(psi, "state");
    return linalg::inner_product(psi, linalg::apply(o, psi)).real();
}

std::vector<OutcomeProbability> eigen_probabilities(const linalg::ComplexMatrix &o,
                                                    const linalg::ComplexVector &psi) {
    require_normalized(psi, "state");
    if (o.dim() != psi.size()) {
        throw InputError("eigen_probabilities: operator and state differ in dimension");
    }
    linalg::EigenDecomposition eig = linalg::eig_hermitian(o);
    std::vector<OutcomeProbability> out;
    for (const linalg::EigenCluster &cluster : linalg::cluster_eigenvalues(eig)) {
        double p = 0;
        for (std::size_t k : cluster.members) {
            p += std::norm(linalg::inner_product(eig.eigenvectors[k], psi));
        }
        out.push_back({cluster.eigenvalue, p});
    }
    return out;
}

}  // namespace weakval::tsvf

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

#include "weakval/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "weakval/errors.hpp"

namespace weakval::linalg {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;
constexpr double kPhaseThreshold = 1e-12;

void require_finite(std::span<const Complex> values, const char *what) {
    for (const Complex &z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InputError(std::string(what) + " has a non-finite entry");
        }
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char *op) {
    if (a != b) {
        throw InputError(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
    }
}

double off_diagonal_norm(const std::vector<Complex> &a, std::size_t n) {
    double sum = 0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (r != c) {
                sum += std::norm(a[r * n + c]);
            }
        }
    }
    return std::sqrt(sum);
}

// Rotate so that the first component above threshold is real positive.
void fix_phase(std::vector<Complex> &v) {
    for (const Complex &z : v) {
        if (std::abs(z) > kPhaseThreshold) {
            Complex phase = std::conj(z) / std::abs(z);
            for (Complex &w : v) {
                w *= phase;
            }
            return;
        }
    }
}

bool lexicographically_greater(const ComplexVector &a, const ComplexVector &b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].real() != b[k].real()) {
            return a[k].real() > b[k].real();
        }
        if (a[k].imag() != b[k].imag()) {
            return a[k].imag() > b[k].imag();
        }
    }
    return false;
}

}  // namespace

ComplexVector::ComplexVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw InputError("ComplexVector must have dimension >= 1");
    }
    require_finite(amps_, "ComplexVector");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> amplitudes)
    : ComplexVector(std::vector<Complex>(amplitudes)) {}

ComplexVector ComplexVector::zeros(std::size_t dim) { return ComplexVector(std::vector<Complex>(dim)); }

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw InputError("basis index out of range");
    }
    std::vector<Complex> v(dim);
    v[index] = 1.0;
    return ComplexVector(std::move(v));
}

double ComplexVector::norm() const {
    double sum = 0;
    for (const Complex &z : amps_) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

ComplexVector ComplexVector::normalized() const {
    double n = norm();
    if (n == 0) {
        throw InputError("cannot normalize a zero vector");
    }
    return *this * Complex(1.0 / n);
}

bool ComplexVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

ComplexVector ComplexVector::operator+(const ComplexVector &other) const {
    require_same_dim(size(), other.size(), "vector +");
    std::vector<Complex> out(size());
    for (std::size_t k = 0; k < size(); ++k) {
        out[k] = amps_[k] + other.amps_[k];
    }
    return ComplexVector(std::move(out));
}

ComplexVector ComplexVector::operator-(const ComplexVector &other) const {
    return *this + other * Complex(-1.0);
}

ComplexVector ComplexVector::operator*(Complex scale) const {
    std::vector<Complex> out(amps_);
    for (Complex &z : out) {
        z *= scale;
    }
    return ComplexVector(std::move(out));
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) {
        throw InputError("ComplexMatrix must have dimension >= 1");
    }
    if (entries_.size() != dim_ * dim_) {
        throw InputError("ComplexMatrix must be square");
    }
    require_finite(entries_, "ComplexMatrix");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size(), [&] {
          std::vector<Complex> flat;
          for (const auto &row : rows) {
              if (row.size() != rows.size()) {
                  throw InputError("ComplexMatrix must be square");
              }
              flat.insert(flat.end(), row.begin(), row.end());
          }
          return flat;
      }()) {}

ComplexMatrix ComplexMatrix::zeros(std::size_t dim) {
    return ComplexMatrix(dim, std::vector<Complex>(dim * dim));
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m = zeros(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m = zeros(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector &v) {
    ComplexMatrix m = zeros(v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            m(r, c) = v[r] * std::conj(v[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out = zeros(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

double ComplexMatrix::max_abs() const {
    double worst = 0;
    for (const Complex &z : entries_) {
        worst = std::max(worst, std::abs(z));
    }
    return worst;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &other) const {
    require_same_dim(dim_, other.dim_, "matrix +");
    std::vector<Complex> out(entries_.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = entries_[k] + other.entries_[k];
    }
    return ComplexMatrix(dim_, std::move(out));
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &other) const {
    return *this + other * Complex(-1.0);
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const {
    require_same_dim(dim_, other.dim_, "matrix *");
    ComplexMatrix out = zeros(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            Complex a = (*this)(r, k);
            if (a == Complex(0)) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; ++c) {
                out(r, c) += a * other(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scale) const {
    std::vector<Complex> out(entries_);
    for (Complex &z : out) {
        z *= scale;
    }
    return ComplexMatrix(dim_, std::move(out));
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    std::size_t n = dim();
    ComplexMatrix m = ComplexMatrix::zeros(n);
    for (std::size_t k = 0; k < n; ++k) {
        const ComplexVector &v = eigenvectors[k];
        for (std::size_t r = 0; r < n; ++r) {
            Complex vr = eigenvalues[k] * v[r];
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) += vr * std::conj(v[c]);
            }
        }
    }
    return m;
}

Complex inner_product(const ComplexVector &a, const ComplexVector &b) {
    require_same_dim(a.size(), b.size(), "inner_product");
    Complex sum = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum += std::conj(a[k]) * b[k];
    }
    return sum;
}

EigenDecomposition eig_hermitian(const ComplexMatrix &m) {
    const std::size_t n = m.dim();
    if (n > kMaxEigenDim) {
        throw DimensionCapError("eig_hermitian: dimension " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxEigenDim));
    }
    if (!m.is_hermitian()) {
        throw InputError("eig_hermitian: matrix is not Hermitian (defect " +
                         std::to_string(m.hermiticity_defect()) + ")");
    }

    // Work on the exactly Hermitian part.
    std::vector<Complex> a(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a[r * n + c] = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    std::vector<Complex> v(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k * n + k] = 1.0;
    }

    double frobenius = 0;
    for (const Complex &z : a) {
        frobenius += std::norm(z);
    }
    frobenius = std::sqrt(frobenius);
    const double tolerance = kOffDiagonalTolerance * std::max(1.0, frobenius);

    int sweep = 0;
    while (off_diagonal_norm(a, n) > tolerance) {
        if (++sweep > kMaxSweeps) {
            throw ConvergenceError("eig_hermitian: Jacobi sweeps did not converge");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex apq = a[p * n + q];
                double mag = std::abs(apq);
                if (mag == 0) {
                    continue;
                }
                // U = diag(1, e^{-i phi}) * R(theta) on the (p, q) plane.
                Complex phase = std::conj(apq) / mag;
                double app = a[p * n + p].real();
                double aqq = a[q * n + q].real();
                double theta = 0.5 * std::atan2(2 * mag, aqq - app);
                double c = std::cos(theta);
                double s = std::sin(theta);
                Complex upp = c;
                Complex upq = s;
                Complex uqp = -s * phase;
                Complex uqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    Complex akp = a[k * n + p];
                    Complex akq = a[k * n + q];
                    a[k * n + p] = akp * upp + akq * uqp;
                    a[k * n + q] = akp * upq + akq * uqq;
                    Complex vkp = v[k * n + p];
                    Complex vkq = v[k * n + q];
                    v[k * n + p] = vkp * upp + vkq * uqp;
                    v[k * n + q] = vkp * upq + vkq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Complex apk = a[p * n + k];
                    Complex aqk = a[q * n + k];
                    a[p * n + k] = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a[q * n + k] = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a[p * n + q] = 0;
                a[q * n + p] = 0;
                a[p * n + p] = a[p * n + p].real();
                a[q * n + q] = a[q * n + q].real();
            }
        }
    }

    EigenDecomposition result;
    std::vector<ComplexVector> vectors;
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = a[k * n + k].real();
        std::vector<Complex> column(n);
        for (std::size_t r = 0; r < n; ++r) {
            column[r] = v[r * n + k];
        }
        fix_phase(column);
        vectors.emplace_back(std::move(column));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    // Within a degenerate run, order eigenvectors lexicographically (descending).
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && values[order[end]] - values[order[end - 1]] <= kDegeneracyTolerance) {
            ++end;
        }
        std::stable_sort(order.begin() + start, order.begin() + end, [&](std::size_t i, std::size_t j) {
            return lexicographically_greater(vectors[i], vectors[j]);
        });
        start = end;
    }
    for (std::size_t k : order) {
        result.eigenvalues.push_back(values[k]);
        result.eigenvectors.push_back(vectors[k]);
    }
    return result;
}

std::vector<EigenCluster> cluster_eigenvalues(const EigenDecomposition &decomposition, double tol) {
    std::vector<EigenCluster> clusters;
    const auto &values = decomposition.eigenvalues;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (clusters.empty() || values[k] - values[clusters.back().members.back()] > tol) {
            clusters.push_back({values[k], {k}});
        } else {
            clusters.back().members.push_back(k);
        }
    }
    for (EigenCluster &cluster : clusters) {
        double sum = 0;
        for (std::size_t k : cluster.members) {
            sum += values[k];
        }
        cluster.eigenvalue = sum / static_cast<double>(cluster.members.size());
    }
    return clusters;
}

ComplexVector project(const EigenDecomposition &decomposition, const EigenCluster &cluster,
                      const ComplexVector &v) {
    require_same_dim(decomposition.dim(), v.size(), "project");
    std::vector<Complex> out(v.size());
    for (std::size_t k : cluster.members) {
        const ComplexVector &e = decomposition.eigenvectors[k];
        Complex c = inner_product(e, v);
        for (std::size_t r = 0; r < v.size(); ++r) {
            out[r] += c * e[r];
        }
    }
    return ComplexVector(std::move(out));
}

ComplexVector tensor_product(const ComplexVector &a, const ComplexVector &b) {
    if (a.size() > kMaxTensorDim / b.size()) {
        throw DimensionCapError("tensor_product: dimension exceeds 2^24");
    }
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out.push_back(a[i] * b[j]);
        }
    }
    return ComplexVector(std::move(out));
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    std::size_t n = a.dim() * b.dim();
    if (a.dim() > kMaxEigenDim / b.dim()) {
        throw DimensionCapError("tensor_product: operator dimension exceeds 4096");
    }
    ComplexMatrix out = ComplexMatrix::zeros(n);
    for (std::size_t ar = 0; ar < a.dim(); ++ar) {
        for (std::size_t ac = 0; ac < a.dim(); ++ac) {
            Complex x = a(ar, ac);
            if (x == Complex(0)) {
                continue;
            }
            for (std::size_t br = 0; br < b.dim(); ++br) {
                for (std::size_t bc = 0; bc < b.dim(); ++bc) {
                    out(ar * b.dim() + br, ac * b.dim() + bc) = x * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexVector apply(const ComplexMatrix &m, const ComplexVector &v) {
    require_same_dim(m.dim(), v.size(), "apply");
    std::vector<Complex> out(v.size());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Complex sum = 0;
        for (std::size_t c = 0; c < m.dim(); ++c) {
            sum += m(r, c) * v[c];
        }
        out[r] = sum;
    }
    return ComplexVector(std::move(out));
}

ComplexMatrix pauli_x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix pauli_y() { return {{0, Complex(0, -1)}, {Complex(0, 1), 0}}; }
ComplexMatrix pauli_z() { return {{1, 0}, {0, -1}}; }

}  // namespace weakval::linalg

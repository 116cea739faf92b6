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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace weakval {

using Complex = std::complex<double>;

namespace linalg {

inline constexpr std::size_t kMaxEigenDim = 4096;
inline constexpr std::size_t kMaxTensorDim = std::size_t{1} << 24;
inline constexpr double kHermitianTolerance = 1e-10;
/// Eigenvalues closer than this form one degenerate cluster.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Dense vector of complex amplitudes. Entries are finite and the dimension is at least one.
class ComplexVector {
   public:
    explicit ComplexVector(std::vector<Complex> amplitudes);
    ComplexVector(std::initializer_list<Complex> amplitudes);

    static ComplexVector zeros(std::size_t dim);
    static ComplexVector basis(std::size_t dim, std::size_t index);

    std::size_t size() const noexcept { return amps_.size(); }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }
    Complex &operator[](std::size_t i) { return amps_[i]; }
    std::span<const Complex> span() const noexcept { return amps_; }
    const std::vector<Complex> &amplitudes() const noexcept { return amps_; }

    double norm() const;
    /// Returns a unit-norm copy; throws InputError for a zero vector.
    ComplexVector normalized() const;
    bool is_normalized(double tol) const;

    ComplexVector operator+(const ComplexVector &other) const;
    ComplexVector operator-(const ComplexVector &other) const;
    ComplexVector operator*(Complex scale) const;

   private:
    std::vector<Complex> amps_;
};

/// Square complex matrix stored row-major.
class ComplexMatrix {
   public:
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zeros(std::size_t dim);
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><v|
    static ComplexMatrix outer(const ComplexVector &v);

    std::size_t dim() const noexcept { return dim_; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const std::vector<Complex> &entries() const noexcept { return entries_; }

    ComplexMatrix adjoint() const;
    /// max |m - m^dagger| over entries.
    double hermiticity_defect() const;
    bool is_hermitian(double tol = kHermitianTolerance) const;
    double max_abs() const;

    ComplexMatrix operator+(const ComplexMatrix &other) const;
    ComplexMatrix operator-(const ComplexMatrix &other) const;
    ComplexMatrix operator*(const ComplexMatrix &other) const;
    ComplexMatrix operator*(Complex scale) const;

   private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// Eigenvalues ascending; eigenvectors orthonormal with their first component
/// above 1e-12 in magnitude made real and positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<ComplexVector> eigenvectors;

    std::size_t dim() const noexcept { return eigenvalues.size(); }
    ComplexMatrix reconstruct() const;
};

/// A set of eigenvalues that agree to kDegeneracyTolerance.
struct EigenCluster {
    double eigenvalue;                 // mean of the members
    std::vector<std::size_t> members;  // indices into EigenDecomposition
};

/// Sum over conj(a_k) * b_k.
Complex inner_product(const ComplexVector &a, const ComplexVector &b);

EigenDecomposition eig_hermitian(const ComplexMatrix &m);

std::vector<EigenCluster> cluster_eigenvalues(const EigenDecomposition &decomposition,
                                              double tol = kDegeneracyTolerance);

/// Orthogonal projection of v onto the span of the cluster's eigenvectors.
ComplexVector project(const EigenDecomposition &decomposition, const EigenCluster &cluster,
                      const ComplexVector &v);

/// Entry (i * dim(b) + j) = a_i * b_j.
ComplexVector tensor_product(const ComplexVector &a, const ComplexVector &b);
ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexVector apply(const ComplexMatrix &m, const ComplexVector &v);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace linalg
}  // namespace weakval

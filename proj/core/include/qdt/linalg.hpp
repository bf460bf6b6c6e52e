// Copyright 2026 The qdt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace qdt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tolerance {
/// Hermiticity, unitarity, trace-one, normalization, orthonormality.
inline constexpr double kStructural = 1e-9;
/// Algebraic identities on small matrices.
inline constexpr double kAlgebraic = 1e-12;
}  // namespace tolerance

// Dense complex linear algebra. All operations are pure and reject non-finite
// entries with InvariantError.

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// Kronecker product; block (i, j) of the result equals a(i, j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// exp(-i h t) by scaling and squaring with a Pade approximant.
/// Throws HermiticityError unless h is Hermitian within kStructural.
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q. Deterministic in the seed.
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

/// Matrix of independent standard complex Gaussians, E|z|^2 = 1.
ComplexMatrix random_ginibre(int rows, int cols, std::uint64_t seed);

/// Max-norm of the entrywise difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_square(const ComplexMatrix& a) noexcept;
bool is_finite(const ComplexMatrix& a) noexcept;
bool is_hermitian(const ComplexMatrix& a, double tol = tolerance::kStructural);
bool is_unitary(const ComplexMatrix& u, double tol = tolerance::kStructural);

void require_finite(const ComplexMatrix& a, std::string_view what);
void require_square(const ComplexMatrix& a, std::string_view what);
void require_unitary(const ComplexMatrix& u, std::string_view what);

}  // namespace qdt

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

#include "qdt/linalg.hpp"

#include <cmath>
#include <random>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

std::string shape(const ComplexMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

bool is_square(const ComplexMatrix& a) noexcept { return a.rows() == a.cols(); }

bool is_finite(const ComplexMatrix& a) noexcept {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const Complex z = a.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

void require_finite(const ComplexMatrix& a, std::string_view what) {
    if (!is_finite(a)) throw InvariantError(std::string(what) + ": non-finite entry");
}

void require_square(const ComplexMatrix& a, std::string_view what) {
    if (!is_square(a))
        throw DimensionError(std::string(what) + ": expected a square matrix, got " + shape(a));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: cannot multiply " + shape(a) + " by " + shape(b));
    require_finite(a, "matmul lhs");
    require_finite(b, "matmul rhs");
    return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

Complex trace(const ComplexMatrix& a) {
    require_square(a, "trace");
    require_finite(a, "trace");
    return a.trace();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_finite(a, "kron lhs");
    require_finite(b, "kron rhs");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff: " + shape(a) + " vs " + shape(b));
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (!is_square(a)) return false;
    return max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (!is_square(u)) return false;
    const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
    return max_abs_diff(u.adjoint() * u, id) <= tol;
}

void require_unitary(const ComplexMatrix& u, std::string_view what) {
    require_square(u, what);
    require_finite(u, what);
    if (!is_unitary(u)) {
        const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
        throw UnitarityError(std::string(what) + ": not unitary, max|U^+U - I| = " +
                             std::to_string(max_abs_diff(u.adjoint() * u, id)));
    }
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
    require_square(h, "unitary_from_hamiltonian");
    require_finite(h, "unitary_from_hamiltonian");
    if (!std::isfinite(t)) throw InvariantError("unitary_from_hamiltonian: non-finite time");
    if (!is_hermitian(h))
        throw HermiticityError("unitary_from_hamiltonian: generator is not Hermitian");
    const ComplexMatrix generator = Complex(0.0, -t) * h;
    return generator.exp();
}

ComplexMatrix random_ginibre(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    // Column-major fill keeps the stream order independent of Eigen's storage.
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw DimensionError("random_unitary: dim must be >= 1");
    const ComplexMatrix g = random_ginibre(dim, dim, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace qdt

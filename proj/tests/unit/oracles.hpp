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

// Reference computations written without the library's code paths.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qdt/linalg.hpp"

namespace oracle {

using qdt::Complex;
using qdt::ComplexMatrix;
using qdt::ComplexVector;

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c = ComplexMatrix::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
    return c;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix d(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) d(j, i) = std::conj(a(i, j));
    return d;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j)
            k(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    return k;
}

inline Complex trace(const ComplexMatrix& a) {
    Complex t = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

/// exp(-i t H) through the spectral decomposition of a Hermitian H.
inline ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    ComplexMatrix d = ComplexMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i) d(i, i) = std::exp(Complex(0.0, -t * es.eigenvalues()(i)));
    return matmul(matmul(es.eigenvectors(), d), dagger(es.eigenvectors()));
}

inline ComplexMatrix outer(const ComplexVector& v) {
    ComplexMatrix p(v.size(), v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        for (Eigen::Index j = 0; j < v.size(); ++j) p(i, j) = v(i) * std::conj(v(j));
    return p;
}

inline double born(const ComplexMatrix& rho, const ComplexVector& v) {
    Complex s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        for (Eigen::Index j = 0; j < v.size(); ++j) s += std::conj(v(i)) * rho(i, j) * v(j);
    return s.real();
}

/// Random density matrix from an independent generator: G G^+ / tr.
inline ComplexMatrix density(int dim, int rank, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    ComplexMatrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = Complex(nd(gen), nd(gen));
    ComplexMatrix r = matmul(g, dagger(g));
    return r / trace(r).real();
}

/// Random Hermitian matrix from an independent generator.
inline ComplexMatrix hermitian(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    ComplexMatrix h(dim, dim);
    for (int i = 0; i < dim; ++i) {
        h(i, i) = nd(gen);
        for (int j = i + 1; j < dim; ++j) {
            h(i, j) = Complex(nd(gen), nd(gen));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

/// Unitary from an independent Hermitian generator.
inline ComplexMatrix unitary(int dim, unsigned seed) { return expm_hermitian(hermitian(dim, seed), 1.0); }

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

inline ComplexVector ket(std::initializer_list<Complex> xs) {
    ComplexVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Complex x : xs) v(i++) = x;
    return v;
}

}  // namespace oracle

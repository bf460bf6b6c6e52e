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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/linalg.hpp"

namespace qdt {

/// Labeled orthonormal family of alternative vectors in an ambient space of
/// dimension D. The family may be smaller than D.
class AlternativeBasis {
public:
    AlternativeBasis(std::vector<std::string> labels, std::vector<ComplexVector> vectors);

    /// First `count` canonical unit vectors of C^dim, labeled "<prefix>1", "<prefix>2", ...
    static AlternativeBasis canonical(int dim, std::string_view prefix = "A", int count = -1);
    /// Columns of `columns` (orthonormal), labeled as given.
    static AlternativeBasis from_columns(const ComplexMatrix& columns, std::vector<std::string> labels);

    std::size_t size() const noexcept { return vectors_.size(); }
    int dim() const noexcept { return static_cast<int>(vectors_.front().size()); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<ComplexVector>& vectors() const noexcept { return vectors_; }
    const ComplexVector& vector(std::size_t i) const { return vectors_.at(i); }
    std::optional<std::size_t> index_of(std::string_view label) const;

    friend bool operator==(const AlternativeBasis& a, const AlternativeBasis& b);

private:
    std::vector<std::string> labels_;
    std::vector<ComplexVector> vectors_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityState {
public:
    explicit DensityState(ComplexMatrix matrix);

    static DensityState uniform(int dim);
    static DensityState pure(const ComplexVector& v);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    double purity() const;
    Eigen::VectorXd eigenvalues() const;

private:
    ComplexMatrix matrix_;
};

/// Labeled family of pairwise orthogonal rank-1 projectors.
class ProjectorMeasure {
public:
    ProjectorMeasure(std::vector<std::string> labels, std::vector<ComplexMatrix> projectors);

    std::size_t size() const noexcept { return projectors_.size(); }
    int dim() const noexcept { return static_cast<int>(projectors_.front().rows()); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
    const ComplexMatrix& projector(std::size_t i) const;
    std::optional<std::size_t> index_of(std::string_view label) const;

    /// max |sum_n P_n - I|; zero for a complete measure.
    double completeness_residual() const;
    bool is_complete(double tol = tolerance::kStructural) const {
        return completeness_residual() <= tol;
    }

private:
    std::vector<std::string> labels_;
    std::vector<ComplexMatrix> projectors_;
};

/// Checks idempotency, hermiticity and unit trace of a rank-1 projector.
/// Higher-rank (degenerate) projectors are rejected.
void require_rank_one_projector(const ComplexMatrix& p, std::string_view what);

/// Clamps a probability computed in floating point to [0, 1]. Values further
/// than kStructural outside the interval raise InvariantError.
double clamp_probability(double raw, std::string_view what);

/// |v><v| for a unit vector v.
ComplexMatrix projector_from_vector(const ComplexVector& v);

ProjectorMeasure measure_from_basis(const AlternativeBasis& basis);

/// Born rule: Tr(rho P_index).
double choice_probability(const DensityState& state, const ProjectorMeasure& measure,
                          std::size_t index);
std::vector<double> all_probabilities(const DensityState& state, const ProjectorMeasure& measure);

/// U rho U^+.
DensityState evolve(const DensityState& state, const ComplexMatrix& u);

/// rho = G G^+ / Tr(G G^+) with G a dim x rank complex Gaussian matrix.
DensityState random_state(int dim, int rank, std::uint64_t seed);

}  // namespace qdt

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

// Kolmogorov baseline: a finite joint distribution over (A_n, B_k) events.
// The joint is stored once, so f(A_n B_k) == f(B_k A_n) holds by construction.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdt/space.hpp"

namespace qdt {

class JointTable {
public:
    /// cells(n, k) = f(A_n B_k). Cells must be non-negative and sum to one.
    JointTable(std::vector<std::string> row_labels, std::vector<std::string> col_labels, Eigen::MatrixXd cells);

    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
    const Eigen::MatrixXd& cells() const noexcept { return cells_; }
    std::size_t rows() const noexcept { return row_labels_.size(); }
    std::size_t cols() const noexcept { return col_labels_.size(); }

    double row_marginal(std::size_t n) const;  // f(A_n)
    double col_marginal(std::size_t k) const;  // f(B_k)

private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    Eigen::MatrixXd cells_;
};

/// f(B_b | A_given_a) = f(B_b A_given_a) / f(A_given_a).
double classical_conditional(const JointTable& table, std::size_t given_a, std::size_t b);

/// f(A_a | B_given_b).
double classical_conditional_given_b(const JointTable& table, std::size_t given_b, std::size_t a);

struct AsymmetryWitness {
    double max_gap = 0.0;                // max |f(A_n|B_k) - f(B_k|A_n)|
    std::optional<std::size_t> row;      // witnessing A_n
    std::optional<std::size_t> col;      // witnessing B_k
};

/// Scans every pair with both marginals above kConditioningEpsilon.
AsymmetryWitness asymmetry_witness(const JointTable& table);

/// Quantum joint probabilities for both choice orders. Matrices are indexed
/// [n][k], n over the first measure and k over the second.
struct InducedJoint {
    Eigen::MatrixXd forward;     // p(B_k, t, A_n, t0): A first
    Eigen::MatrixXd reverse;     // p(A_n, t, B_k, t0): B first
    Eigen::MatrixXd difference;  // forward - reverse
    double total_difference = 0.0;

    bool interchange_symmetric(double tol = tolerance::kStructural) const;
    /// The forward matrix as a classical table, if it is interchange symmetric
    /// and normalized.
    std::optional<JointTable> as_joint_table(const std::vector<std::string>& row_labels,
                                             const std::vector<std::string>& col_labels,
                                             double tol = tolerance::kStructural) const;
};

InducedJoint induced_joint_from_quantum(const DensityState& state0, const ProjectorMeasure& first_measure,
                                        const ComplexMatrix& u, const ProjectorMeasure& second_measure);

}  // namespace qdt

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

#include "qdt/classical.hpp"

#include <cmath>
#include <utility>

#include "qdt/errors.hpp"
#include "qdt/sequential.hpp"

namespace qdt {

JointTable::JointTable(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                       Eigen::MatrixXd cells)
    : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)), cells_(std::move(cells)) {
    if (cells_.rows() != static_cast<Eigen::Index>(row_labels_.size()) ||
        cells_.cols() != static_cast<Eigen::Index>(col_labels_.size()) || cells_.size() == 0)
        throw DimensionError("joint table: label counts do not match cell matrix");
    if (!cells_.allFinite()) throw InvariantError("joint table: non-finite cell");
    if (cells_.minCoeff() < 0.0) throw InvariantError("joint table: negative cell");
    if (std::abs(cells_.sum() - 1.0) > tolerance::kAlgebraic)
        throw InvariantError("joint table: cells sum to " + std::to_string(cells_.sum()) + ", expected 1");
}

double JointTable::row_marginal(std::size_t n) const {
    if (n >= rows()) throw IndexError("joint table: row out of range");
    return cells_.row(static_cast<Eigen::Index>(n)).sum();
}

double JointTable::col_marginal(std::size_t k) const {
    if (k >= cols()) throw IndexError("joint table: column out of range");
    return cells_.col(static_cast<Eigen::Index>(k)).sum();
}

double classical_conditional(const JointTable& table, std::size_t given_a, std::size_t b) {
    const double fa = table.row_marginal(given_a);
    if (b >= table.cols()) throw IndexError("classical_conditional: column out of range");
    if (fa <= kConditioningEpsilon)
        throw ZeroProbabilityConditioning("classical_conditional: f(" + table.row_labels()[given_a] + ") = 0", fa);
    return table.cells()(static_cast<Eigen::Index>(given_a), static_cast<Eigen::Index>(b)) / fa;
}

double classical_conditional_given_b(const JointTable& table, std::size_t given_b, std::size_t a) {
    const double fb = table.col_marginal(given_b);
    if (a >= table.rows()) throw IndexError("classical_conditional_given_b: row out of range");
    if (fb <= kConditioningEpsilon)
        throw ZeroProbabilityConditioning("classical_conditional: f(" + table.col_labels()[given_b] + ") = 0", fb);
    return table.cells()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(given_b)) / fb;
}

AsymmetryWitness asymmetry_witness(const JointTable& table) {
    AsymmetryWitness w;
    for (std::size_t n = 0; n < table.rows(); ++n) {
        if (table.row_marginal(n) <= kConditioningEpsilon) continue;
        for (std::size_t k = 0; k < table.cols(); ++k) {
            if (table.col_marginal(k) <= kConditioningEpsilon) continue;
            const double gap =
                std::abs(classical_conditional_given_b(table, k, n) - classical_conditional(table, n, k));
            if (!w.row || gap > w.max_gap) {
                w.max_gap = gap;
                w.row = n;
                w.col = k;
            }
        }
    }
    return w;
}

bool InducedJoint::interchange_symmetric(double tol) const {
    return difference.size() == 0 || difference.cwiseAbs().maxCoeff() <= tol;
}

std::optional<JointTable> InducedJoint::as_joint_table(const std::vector<std::string>& row_labels,
                                                       const std::vector<std::string>& col_labels,
                                                       double tol) const {
    if (!interchange_symmetric(tol) || std::abs(forward.sum() - 1.0) > tol) return std::nullopt;
    Eigen::MatrixXd cells = forward.cwiseMax(0.0);
    cells /= cells.sum();
    return JointTable(row_labels, col_labels, std::move(cells));
}

InducedJoint induced_joint_from_quantum(const DensityState& state0, const ProjectorMeasure& first_measure,
                                        const ComplexMatrix& u, const ProjectorMeasure& second_measure) {
    for (const auto* m : {&first_measure, &second_measure}) {
        if (!m->is_complete())
            throw IncompleteMeasureError("induced_joint_from_quantum: measure is not complete");
    }
    const auto na = static_cast<Eigen::Index>(first_measure.size());
    const auto nb = static_cast<Eigen::Index>(second_measure.size());
    InducedJoint j;
    j.forward.resize(na, nb);
    j.reverse.resize(na, nb);
    for (Eigen::Index n = 0; n < na; ++n) {
        for (Eigen::Index k = 0; k < nb; ++k) {
            const auto& pa = first_measure.projector(n);
            const auto& pb = second_measure.projector(k);
            j.forward(n, k) = joint_probability(state0, pa, u, pb);
            j.reverse(n, k) = joint_probability(state0, pb, u, pa);
        }
    }
    j.difference = j.forward - j.reverse;
    j.total_difference = j.difference.sum();
    return j;
}

}  // namespace qdt

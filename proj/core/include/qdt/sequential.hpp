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
#include <optional>
#include <string>
#include <string_view>

#include "qdt/space.hpp"

namespace qdt {

/// Tr(rho P) at or below this value is treated as an impossible event.
inline constexpr double kConditioningEpsilon = 1e-12;

/// Position of a choice relative to the reduction instant t0.
enum class TimeTag { before, at, immediately_after, later };

std::string_view to_string(TimeTag tag) noexcept;

struct ChoiceRecord {
    std::string measure_label;
    std::size_t outcome_index = 0;
    TimeTag time_tag = TimeTag::at;

    /// Throws IndexError if outcome_index does not name an outcome of `measure`.
    void validate(const ProjectorMeasure& measure) const;
};

/// Forward means "a" chosen first, then "b"; reverse swaps the order.
///
/// A conditional is empty when its conditioning event has probability at or
/// below kConditioningEpsilon; the matching flag is then false.
struct SymmetryReport {
    std::optional<double> conditional_forward;
    std::optional<double> conditional_reverse;
    double joint_forward = 0.0;
    double joint_reverse = 0.0;
    bool conditional_symmetric = false;
    bool joint_symmetric = false;
    double tolerance = tolerance::kStructural;
    std::string conditioning_note;
};

/// Builds a report from the four values, setting the flags as |fwd - rev| < tol.
SymmetryReport make_symmetry_report(std::optional<double> cond_fwd, std::optional<double> cond_rev,
                                    double joint_fwd, double joint_rev, double tol);

/// P rho P / Tr(rho P).
DensityState luders_reduce(const DensityState& state, const ComplexMatrix& projector);

/// Tr( U P_first rho P_first U^+ P_second ).
double joint_probability(const DensityState& state0, const ComplexMatrix& first, const ComplexMatrix& u,
                         const ComplexMatrix& second);

/// joint_probability / Tr(rho P_first).
double conditional_probability(const DensityState& state0, const ComplexMatrix& first,
                               const ComplexMatrix& u, const ComplexMatrix& second);

/// |<second|first>|^2, the conditional for a second choice made immediately.
double immediate_conditional(const ComplexVector& first_vector, const ComplexVector& second_vector);

/// Residuals of the conditional/joint normalization identities for two
/// complete measures. Joint matrices are indexed [n][k] with n over the first
/// measure and k over the second.
struct MarginalReport {
    Eigen::MatrixXd joint_forward;   // p(B_k, t, A_n, t0)
    Eigen::MatrixXd joint_reverse;   // p(A_n, t, B_k, t0)
    Eigen::MatrixXd conditional_forward;  // p(B_k, t | A_n, t0); NaN rows for impossible A_n
    Eigen::MatrixXd conditional_reverse;  // p(A_n, t | B_k, t0); NaN columns for impossible B_k
    double conditional_sum_residual = 0.0;  // max |sum_k p(B_k|A_n) - 1| and the reverse
    double joint_marginal_residual = 0.0;   // max |sum_k p(B_k,A_n) - p(A_n)| and the reverse
    double total_residual = 0.0;            // |sum_nk p(B_k,A_n) - 1| and the reverse
    double antisymmetric_residual = 0.0;    // |sum_nk [p(B_k,A_n) - p(A_n,B_k)]|
    std::size_t skipped_conditions = 0;     // conditioning events below kConditioningEpsilon

    double max_residual() const;
};

MarginalReport marginal_check(const DensityState& state0, const ProjectorMeasure& first_measure,
                              const ComplexMatrix& u, const ProjectorMeasure& second_measure);

SymmetryReport symmetry_report(const DensityState& state0, const ComplexVector& a, const ComplexVector& b,
                               const ComplexMatrix& u, double tol = tolerance::kStructural);

}  // namespace qdt

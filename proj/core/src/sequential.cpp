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

#include "qdt/sequential.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

void require_projector(const ComplexMatrix& p, std::string_view what) {
    require_square(p, what);
    require_finite(p, what);
    if (!is_hermitian(p)) throw InvariantError(std::string(what) + ": projector is not Hermitian");
    if (max_abs_diff(p * p, p) > tolerance::kStructural)
        throw InvariantError(std::string(what) + ": projector is not idempotent");
}

void require_dim(const ComplexMatrix& m, int dim, std::string_view what) {
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                             std::to_string(dim) + ", got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.transpose().cwiseProduct(b).sum().real();
}

double prior(const DensityState& state, const ComplexMatrix& p) {
    return trace_product(state.matrix(), p);
}

[[noreturn]] void throw_zero_conditioning(std::string_view what, double p) {
    std::ostringstream os;
    os << what << ": conditioning event has probability " << p << " <= " << kConditioningEpsilon;
    throw ZeroProbabilityConditioning(os.str(), p);
}

}  // namespace

std::string_view to_string(TimeTag tag) noexcept {
    switch (tag) {
        case TimeTag::before: return "before";
        case TimeTag::at: return "at";
        case TimeTag::immediately_after: return "immediately_after";
        case TimeTag::later: return "later";
    }
    return "unknown";
}

void ChoiceRecord::validate(const ProjectorMeasure& measure) const {
    if (outcome_index >= measure.size())
        throw IndexError("choice record: outcome " + std::to_string(outcome_index) +
                         " out of range for measure \"" + measure_label + "\" with " +
                         std::to_string(measure.size()) + " outcomes");
}

SymmetryReport make_symmetry_report(std::optional<double> cond_fwd, std::optional<double> cond_rev,
                                    double joint_fwd, double joint_rev, double tol) {
    SymmetryReport r;
    r.conditional_forward = cond_fwd;
    r.conditional_reverse = cond_rev;
    r.joint_forward = joint_fwd;
    r.joint_reverse = joint_rev;
    r.tolerance = tol;
    r.conditional_symmetric = cond_fwd && cond_rev && std::abs(*cond_fwd - *cond_rev) < tol;
    r.joint_symmetric = std::abs(joint_fwd - joint_rev) < tol;
    if (!cond_fwd) r.conditioning_note += "forward conditioning event has zero probability; ";
    if (!cond_rev) r.conditioning_note += "reverse conditioning event has zero probability; ";
    return r;
}

DensityState luders_reduce(const DensityState& state, const ComplexMatrix& projector) {
    require_projector(projector, "luders_reduce");
    require_dim(projector, state.dim(), "luders_reduce projector");
    const double p = prior(state, projector);
    if (p <= kConditioningEpsilon) throw_zero_conditioning("luders_reduce", p);
    // Work in the range of P (P = V V^+): P rho P / p = V (V^+ rho V / p) V^+.
    // Forming P rho P directly and dividing by a small prior amplifies the
    // rounding residue of the sandwich; the compressed form does not.
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(projector);
    std::vector<Eigen::Index> range;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 0.5) range.push_back(i);
    ComplexMatrix v(projector.rows(), static_cast<Eigen::Index>(range.size()));
    for (std::size_t j = 0; j < range.size(); ++j) v.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(range[j]);
    ComplexMatrix m = v.adjoint() * state.matrix() * v;
    m = (0.5 * (m + m.adjoint())).eval();
    const double norm = m.trace().real();
    if (!(norm > 0.0)) throw_zero_conditioning("luders_reduce", p);
    ComplexMatrix post = v * (m / norm) * v.adjoint();
    return DensityState((0.5 * (post + post.adjoint())).eval());
}

double joint_probability(const DensityState& state0, const ComplexMatrix& first, const ComplexMatrix& u,
                         const ComplexMatrix& second) {
    require_projector(first, "joint_probability first");
    require_projector(second, "joint_probability second");
    require_dim(first, state0.dim(), "joint_probability first");
    require_dim(second, state0.dim(), "joint_probability second");
    require_dim(u, state0.dim(), "joint_probability evolution");
    require_unitary(u, "joint_probability evolution");
    const ComplexMatrix reduced = first * state0.matrix() * first;
    const ComplexMatrix evolved = u * reduced * u.adjoint();
    return clamp_probability(trace_product(evolved, second), "joint_probability");
}

double conditional_probability(const DensityState& state0, const ComplexMatrix& first,
                               const ComplexMatrix& u, const ComplexMatrix& second) {
    require_projector(first, "conditional_probability first");
    require_dim(first, state0.dim(), "conditional_probability first");
    const double p = prior(state0, first);
    if (p <= kConditioningEpsilon) throw_zero_conditioning("conditional_probability", p);
    const double joint = joint_probability(state0, first, u, second);
    return clamp_probability(joint / p, "conditional_probability");
}

double immediate_conditional(const ComplexVector& first_vector, const ComplexVector& second_vector) {
    if (first_vector.size() != second_vector.size())
        throw DimensionError("immediate_conditional: vector dimensions differ");
    for (const auto* v : {&first_vector, &second_vector}) {
        if (std::abs(v->norm() - 1.0) > tolerance::kStructural)
            throw NormalizationError("immediate_conditional: vector is not normalized");
    }
    return clamp_probability(std::norm(second_vector.dot(first_vector)), "immediate_conditional");
}

double MarginalReport::max_residual() const {
    return std::max({conditional_sum_residual, joint_marginal_residual, total_residual,
                     antisymmetric_residual});
}

MarginalReport marginal_check(const DensityState& state0, const ProjectorMeasure& first_measure,
                              const ComplexMatrix& u, const ProjectorMeasure& second_measure) {
    for (const auto* m : {&first_measure, &second_measure}) {
        if (m->dim() != state0.dim())
            throw DimensionError("marginal_check: measure dimension does not match state");
        if (!m->is_complete())
            throw IncompleteMeasureError("marginal_check: measure does not resolve the identity, residual " +
                                         std::to_string(m->completeness_residual()));
    }
    const auto na = static_cast<Eigen::Index>(first_measure.size());
    const auto nb = static_cast<Eigen::Index>(second_measure.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    MarginalReport r;
    r.joint_forward.resize(na, nb);
    r.joint_reverse.resize(na, nb);
    r.conditional_forward.setConstant(na, nb, nan);
    r.conditional_reverse.setConstant(na, nb, nan);

    Eigen::VectorXd prior_a(na), prior_b(nb);
    for (Eigen::Index n = 0; n < na; ++n) prior_a(n) = choice_probability(state0, first_measure, n);
    for (Eigen::Index k = 0; k < nb; ++k) prior_b(k) = choice_probability(state0, second_measure, k);

    for (Eigen::Index n = 0; n < na; ++n) {
        for (Eigen::Index k = 0; k < nb; ++k) {
            const auto& pa = first_measure.projector(n);
            const auto& pb = second_measure.projector(k);
            r.joint_forward(n, k) = joint_probability(state0, pa, u, pb);
            r.joint_reverse(n, k) = joint_probability(state0, pb, u, pa);
            if (prior_a(n) > kConditioningEpsilon) r.conditional_forward(n, k) = r.joint_forward(n, k) / prior_a(n);
            if (prior_b(k) > kConditioningEpsilon) r.conditional_reverse(n, k) = r.joint_reverse(n, k) / prior_b(k);
        }
    }

    for (Eigen::Index n = 0; n < na; ++n) {
        if (prior_a(n) > kConditioningEpsilon)
            r.conditional_sum_residual =
                std::max(r.conditional_sum_residual, std::abs(r.conditional_forward.row(n).sum() - 1.0));
        else
            ++r.skipped_conditions;
        r.joint_marginal_residual =
            std::max(r.joint_marginal_residual, std::abs(r.joint_forward.row(n).sum() - prior_a(n)));
    }
    for (Eigen::Index k = 0; k < nb; ++k) {
        if (prior_b(k) > kConditioningEpsilon)
            r.conditional_sum_residual =
                std::max(r.conditional_sum_residual, std::abs(r.conditional_reverse.col(k).sum() - 1.0));
        else
            ++r.skipped_conditions;
        r.joint_marginal_residual =
            std::max(r.joint_marginal_residual, std::abs(r.joint_reverse.col(k).sum() - prior_b(k)));
    }
    r.total_residual = std::max(std::abs(r.joint_forward.sum() - 1.0), std::abs(r.joint_reverse.sum() - 1.0));
    r.antisymmetric_residual = std::abs((r.joint_forward - r.joint_reverse).sum());
    return r;
}

SymmetryReport symmetry_report(const DensityState& state0, const ComplexVector& a, const ComplexVector& b,
                               const ComplexMatrix& u, double tol) {
    const ComplexMatrix pa = projector_from_vector(a);
    const ComplexMatrix pb = projector_from_vector(b);
    const double joint_fwd = joint_probability(state0, pa, u, pb);
    const double joint_rev = joint_probability(state0, pb, u, pa);
    std::optional<double> cond_fwd, cond_rev;
    try {
        cond_fwd = conditional_probability(state0, pa, u, pb);
    } catch (const ZeroProbabilityConditioning&) {
    }
    try {
        cond_rev = conditional_probability(state0, pb, u, pa);
    } catch (const ZeroProbabilityConditioning&) {
    }
    return make_symmetry_report(cond_fwd, cond_rev, joint_fwd, joint_rev, tol);
}

}  // namespace qdt

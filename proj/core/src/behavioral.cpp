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

#include "qdt/behavioral.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

void require_decision_dim(const DensityState& state, const Prospect& p, std::string_view what) {
    if (state.dim() != p.decision_dim())
        throw DimensionError(std::string(what) + ": state dimension " + std::to_string(state.dim()) +
                             " vs decision space " + std::to_string(p.alternative_dim()) + "x" +
                             std::to_string(p.subject_dim()));
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

SubjectSpace::SubjectSpace(std::vector<std::string> feeling_labels) : labels_(std::move(feeling_labels)) {
    if (labels_.empty()) throw DimensionError("subject space: needs at least one feeling");
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second) throw InvariantError("subject space: duplicate feeling \"" + l + "\"");
}

SubjectSpace SubjectSpace::with_dim(int dim) {
    if (dim < 1) throw DimensionError("subject space: dim must be >= 1");
    std::vector<std::string> labels;
    for (int i = 0; i < dim; ++i) labels.push_back("s" + std::to_string(i + 1));
    return SubjectSpace(std::move(labels));
}

EmotionVector::EmotionVector(ComplexVector coefficients) : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() < 1) throw DimensionError("emotion vector: empty");
    require_finite(coefficients_, "emotion vector");
    const double norm2 = coefficients_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tolerance::kStructural)
        throw NormalizationError("emotion vector: sum |b|^2 = " + fmt(norm2) + ", expected 1");
}

EmotionVector EmotionVector::elementary(int dim, int feeling) {
    if (feeling < 0 || feeling >= dim) throw IndexError("elementary emotion: feeling out of range");
    return EmotionVector(ComplexVector::Unit(dim, feeling));
}

EmotionVector EmotionVector::perturbed(double amplitude, std::uint64_t seed) const {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw InvariantError("emotion perturbation: amplitude must be finite and >= 0");
    if (amplitude == 0.0) return *this;
    ComplexVector noisy = coefficients_ + amplitude * random_ginibre(dim(), 1, seed).col(0);
    const double norm = noisy.norm();
    if (norm == 0.0) return *this;
    return EmotionVector(noisy / norm);
}

Prospect::Prospect(std::size_t index, ComplexVector alt, EmotionVector e)
    : alternative_index(index), alternative_vector(std::move(alt)), emotion(std::move(e)) {
    if (alternative_vector.size() < 1) throw DimensionError("prospect: empty alternative vector");
    require_finite(alternative_vector, "prospect alternative");
    if (std::abs(alternative_vector.norm() - 1.0) > tolerance::kStructural)
        throw NormalizationError("prospect: alternative vector is not normalized");
}

ComplexVector Prospect::vector() const { return kron(alternative_vector, emotion.coefficients()); }

ProspectMeasure::ProspectMeasure(std::vector<Prospect> prospects) : prospects_(std::move(prospects)) {
    if (prospects_.empty()) throw InvariantError("prospect measure: no prospects");
    const int da = prospects_.front().alternative_dim();
    const int ds = prospects_.front().subject_dim();
    std::vector<ComplexVector> vectors;
    for (std::size_t n = 0; n < prospects_.size(); ++n) {
        const auto& p = prospects_[n];
        if (p.alternative_dim() != da || p.subject_dim() != ds)
            throw DimensionError("prospect measure: prospect " + std::to_string(n) +
                                 " lives in a different decision space");
        vectors.push_back(p.vector());
        projectors_.push_back(prospect_projector(p));
    }
    for (std::size_t m = 0; m < vectors.size(); ++m) {
        for (std::size_t n = m + 1; n < vectors.size(); ++n) {
            const double overlap = std::abs(vectors[m].dot(vectors[n]));
            if (overlap > tolerance::kStructural)
                throw InvariantError("prospect measure: prospects " + std::to_string(m) + "," +
                                     std::to_string(n) + " not orthogonal: |<m|n>| = " + fmt(overlap));
            const ComplexMatrix mn = projectors_[m] * projectors_[n];
            const ComplexMatrix nm = projectors_[n] * projectors_[m];
            if (mn.cwiseAbs().maxCoeff() > tolerance::kStructural || (mn - nm).cwiseAbs().maxCoeff() > tolerance::kStructural)
                throw InvariantError("prospect measure: projectors " + std::to_string(m) + "," +
                                     std::to_string(n) + " not orthogonal/commuting");
        }
    }
}

ProspectMeasure ProspectMeasure::from_basis(const AlternativeBasis& basis, const std::vector<EmotionVector>& emotions) {
    if (emotions.size() != basis.size())
        throw DimensionError("prospect measure: " + std::to_string(emotions.size()) + " emotion vectors for " +
                             std::to_string(basis.size()) + " alternatives");
    std::vector<Prospect> prospects;
    for (std::size_t n = 0; n < basis.size(); ++n) prospects.emplace_back(n, basis.vector(n), emotions[n]);
    return ProspectMeasure(std::move(prospects));
}

ComplexMatrix ProspectMeasure::total_projector() const {
    ComplexMatrix sum = ComplexMatrix::Zero(decision_dim(), decision_dim());
    for (const auto& p : projectors_) sum += p;
    return sum;
}

// ---------------------------------------------------------------------------

ComplexMatrix emotion_projector(const EmotionVector& e) { return projector_from_vector(e.coefficients()); }

ComplexMatrix prospect_projector(const Prospect& p) {
    return kron(projector_from_vector(p.alternative_vector), emotion_projector(p.emotion));
}

double resolution_check(const DensityState& state, const ProspectMeasure& measure) {
    if (state.dim() != measure.decision_dim())
        throw DimensionError("resolution_check: state dimension " + std::to_string(state.dim()) +
                             " vs decision space " + std::to_string(measure.decision_dim()));
    const double mass = state.matrix().transpose().cwiseProduct(measure.total_projector()).sum().real();
    return std::abs(mass - 1.0);
}

double prospect_probability(const DensityState& state, const Prospect& p) {
    require_decision_dim(state, p, "prospect_probability");
    const double raw = state.matrix().transpose().cwiseProduct(prospect_projector(p)).sum().real();
    return clamp_probability(raw, "prospect_probability");
}

ProspectDecomposition decompose_prospect(const DensityState& state, const Prospect& p) {
    require_decision_dim(state, p, "decompose_prospect");
    const int ds = p.subject_dim();
    // Embedding |A_n> (x) I_S; its columns are the vectors |A_n alpha>.
    ComplexMatrix embed = kron(ComplexMatrix(p.alternative_vector), ComplexMatrix::Identity(ds, ds));
    const ComplexMatrix block = embed.adjoint() * state.matrix() * embed;  // <alpha A_n|rho|A_n beta>
    const ComplexVector& b = p.emotion.coefficients();

    double rational = 0.0;
    Complex quality(0.0, 0.0);
    for (int a = 0; a < ds; ++a) {
        rational += std::norm(b(a)) * block(a, a).real();
        for (int c = 0; c < ds; ++c) {
            if (c != a) quality += std::conj(b(a)) * b(c) * block(a, c);
        }
    }
    if (std::abs(quality.imag()) > tolerance::kStructural)
        throw InvariantError("decompose_prospect: quality factor has imaginary part " + fmt(quality.imag()));
    if (quality.real() < -1.0 - tolerance::kStructural || quality.real() > 1.0 + tolerance::kStructural)
        throw InvariantError("decompose_prospect: quality factor " + fmt(quality.real()) + " outside [-1, 1]");

    ProspectDecomposition d;
    d.total = prospect_probability(state, p);
    d.rational = rational;
    d.quality = quality.real();
    d.quality_imaginary = quality.imag();
    return d;
}

NormalizationDiagnostics normalization_diagnostics(const DensityState& state, const ProspectMeasure& measure) {
    NormalizationDiagnostics d;
    d.resolution_residual = resolution_check(state, measure);
    for (const auto& p : measure.prospects()) {
        const auto dec = decompose_prospect(state, p);
        d.sum_total += dec.total;
        d.sum_rational += dec.rational;
        d.sum_quality += dec.quality;
    }
    d.rational_residual = std::abs(d.sum_rational - 1.0);
    d.quality_residual = std::abs(d.sum_quality);
    d.split_residual = std::abs(d.sum_quality - (1.0 - d.sum_rational));
    d.normalized = behaviorally_normalized(d.resolution_residual);
    return d;
}

DensityState behavioral_luders(const DensityState& state, const Prospect& p) {
    require_decision_dim(state, p, "behavioral_luders");
    return luders_reduce(state, prospect_projector(p));
}

double behavioral_joint(const DensityState& state0, const Prospect& first, const ComplexMatrix& u,
                        const Prospect& second) {
    require_decision_dim(state0, first, "behavioral_joint");
    require_decision_dim(state0, second, "behavioral_joint");
    return joint_probability(state0, prospect_projector(first), u, prospect_projector(second));
}

double behavioral_conditional(const DensityState& state0, const Prospect& first, const ComplexMatrix& u,
                              const Prospect& second) {
    require_decision_dim(state0, first, "behavioral_conditional");
    require_decision_dim(state0, second, "behavioral_conditional");
    return conditional_probability(state0, prospect_projector(first), u, prospect_projector(second));
}

double prospect_overlap_probability(const Prospect& first, const Prospect& second) {
    return immediate_conditional(first.vector(), second.vector());
}

SymmetryReport behavioral_symmetry_report(const DensityState& state0, const Prospect& a, const ComplexMatrix& u,
                                          const Prospect& b, double tol) {
    require_decision_dim(state0, a, "behavioral_symmetry_report");
    require_decision_dim(state0, b, "behavioral_symmetry_report");
    const ComplexMatrix pa = prospect_projector(a);
    const ComplexMatrix pb = prospect_projector(b);
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

ComplexMatrix decision_unitary(const ComplexMatrix& u_alternatives, const ComplexMatrix& u_subject) {
    require_unitary(u_alternatives, "decision_unitary alternatives factor");
    require_unitary(u_subject, "decision_unitary subject factor");
    return kron(u_alternatives, u_subject);
}

DensityState reduce_to_alternatives(const DensityState& state, int alternative_dim, int subject_dim) {
    if (alternative_dim < 1 || subject_dim < 1 || alternative_dim * subject_dim != state.dim())
        throw DimensionError("reduce_to_alternatives: " + std::to_string(alternative_dim) + "x" +
                             std::to_string(subject_dim) + " does not match state dimension " +
                             std::to_string(state.dim()));
    ComplexMatrix reduced = ComplexMatrix::Zero(alternative_dim, alternative_dim);
    for (int i = 0; i < alternative_dim; ++i)
        for (int j = 0; j < alternative_dim; ++j)
            for (int s = 0; s < subject_dim; ++s)
                reduced(i, j) += state.matrix()(i * subject_dim + s, j * subject_dim + s);
    return DensityState(std::move(reduced));
}

DensityState project_onto_prospects(const DensityState& state, const ProspectMeasure& measure) {
    if (state.dim() != measure.decision_dim())
        throw DimensionError("project_onto_prospects: dimension mismatch");
    // The prospect projectors are orthogonal, so their sum is itself a projector.
    return luders_reduce(state, measure.total_projector());
}

}  // namespace qdt

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

// Behavioral decision model: alternatives are paired with emotion vectors in
// a subject space of elementary feelings, and choices are measured on the
// tensor product (alternatives x feelings).
//
// Ordering convention for the decision space: index = alternative * dim_S + feeling,
// matching kron(alternative, emotion).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qdt/sequential.hpp"
#include "qdt/space.hpp"

namespace qdt {

class SubjectSpace {
public:
    explicit SubjectSpace(std::vector<std::string> feeling_labels);
    /// Feelings labeled "s1", "s2", ...
    static SubjectSpace with_dim(int dim);

    int dim() const noexcept { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& feeling_labels() const noexcept { return labels_; }

    friend bool operator==(const SubjectSpace&, const SubjectSpace&) = default;

private:
    std::vector<std::string> labels_;
};

/// Unit vector of feeling amplitudes. Distinct emotion vectors need not be
/// orthogonal.
class EmotionVector {
public:
    explicit EmotionVector(ComplexVector coefficients);

    /// One-hot emotion on a single elementary feeling.
    static EmotionVector elementary(int dim, int feeling);

    const ComplexVector& coefficients() const noexcept { return coefficients_; }
    int dim() const noexcept { return static_cast<int>(coefficients_.size()); }

    /// Adds complex Gaussian noise of the given amplitude and renormalizes.
    /// Models contextual fluctuation of the coefficients between evaluations;
    /// amplitude 0 returns an identical vector.
    EmotionVector perturbed(double amplitude, std::uint64_t seed) const;

private:
    ComplexVector coefficients_;
};

struct Prospect {
    Prospect(std::size_t alternative_index, ComplexVector alternative_vector, EmotionVector emotion);

    std::size_t alternative_index;
    ComplexVector alternative_vector;
    EmotionVector emotion;

    int alternative_dim() const noexcept { return static_cast<int>(alternative_vector.size()); }
    int subject_dim() const noexcept { return emotion.dim(); }
    int decision_dim() const noexcept { return alternative_dim() * subject_dim(); }

    /// |A_n> (x) |x_n>.
    ComplexVector vector() const;
};

/// Prospects built from one orthonormal alternative family; their projectors
/// are mutually orthogonal and commute.
class ProspectMeasure {
public:
    explicit ProspectMeasure(std::vector<Prospect> prospects);

    /// One prospect per basis vector, paired with emotions[n].
    static ProspectMeasure from_basis(const AlternativeBasis& basis, const std::vector<EmotionVector>& emotions);

    std::size_t size() const noexcept { return prospects_.size(); }
    int decision_dim() const noexcept { return prospects_.front().decision_dim(); }
    const std::vector<Prospect>& prospects() const noexcept { return prospects_; }
    const Prospect& prospect(std::size_t i) const { return prospects_.at(i); }
    const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
    /// Sum of the prospect projectors.
    ComplexMatrix total_projector() const;

private:
    std::vector<Prospect> prospects_;
    std::vector<ComplexMatrix> projectors_;
};

/// Prospect probability split into the diagonal (rational) and interference
/// (quality) parts. total == rational + quality.
struct ProspectDecomposition {
    double total = 0.0;
    double rational = 0.0;
    double quality = 0.0;
    /// Imaginary residue of the interference sum, discarded after the realness check.
    double quality_imaginary = 0.0;
};

/// |x><x| on the subject space.
ComplexMatrix emotion_projector(const EmotionVector& e);

/// P(A_n) (x) P(x_n) on the decision space.
ComplexMatrix prospect_projector(const Prospect& p);

/// |Tr(rho sum_n P(A_n x_n)) - 1|. Zero means the prospects exhaust the state.
double resolution_check(const DensityState& state, const ProspectMeasure& measure);

inline bool behaviorally_normalized(double resolution_residual) {
    return resolution_residual < tolerance::kStructural;
}

double prospect_probability(const DensityState& state, const Prospect& p);

/// rational = sum_a |b_a|^2 <a A|rho|A a>, quality = sum_{a != b} b_a^* b_b <a A|rho|A b>.
/// Throws InvariantError if the quality factor has an imaginary part above
/// kStructural or leaves [-1, 1].
ProspectDecomposition decompose_prospect(const DensityState& state, const Prospect& p);

/// Sums over a prospect measure; sum_f == 1 and sum_q == 0 are reported as
/// diagnostics, not enforced.
struct NormalizationDiagnostics {
    double sum_total = 0.0;
    double sum_rational = 0.0;
    double sum_quality = 0.0;
    double resolution_residual = 0.0;
    double rational_residual = 0.0;  // |sum_f - 1|
    double quality_residual = 0.0;   // |sum_q|
    double split_residual = 0.0;     // |sum_q - (1 - sum_f)|
    bool normalized = false;
};

NormalizationDiagnostics normalization_diagnostics(const DensityState& state, const ProspectMeasure& measure);

DensityState behavioral_luders(const DensityState& state, const Prospect& p);

double behavioral_joint(const DensityState& state0, const Prospect& first, const ComplexMatrix& u,
                        const Prospect& second);

double behavioral_conditional(const DensityState& state0, const Prospect& first, const ComplexMatrix& u,
                              const Prospect& second);

/// Immediate-choice conditional: |<x_k B_k | A_n x_n>|^2.
double prospect_overlap_probability(const Prospect& first, const Prospect& second);

SymmetryReport behavioral_symmetry_report(const DensityState& state0, const Prospect& a, const ComplexMatrix& u,
                                          const Prospect& b, double tol = tolerance::kStructural);

/// U_A (x) U_S.
ComplexMatrix decision_unitary(const ComplexMatrix& u_alternatives, const ComplexMatrix& u_subject);

/// Tr_S rho, the state restricted to the alternative space.
DensityState reduce_to_alternatives(const DensityState& state, int alternative_dim, int subject_dim);

/// P rho P / Tr(rho P) with P the total prospect projector; the result passes
/// resolution_check.
DensityState project_onto_prospects(const DensityState& state, const ProspectMeasure& measure);

}  // namespace qdt

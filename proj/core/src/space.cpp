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

#include "qdt/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include <spdlog/spdlog.h>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

void require_unique(const std::vector<std::string>& labels, std::string_view what) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second)
            throw InvariantError(std::string(what) + ": duplicate label \"" + l + "\"");
    }
}

std::optional<std::size_t> find_label(const std::vector<std::string>& labels, std::string_view label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

// ---------------------------------------------------------------------------
// AlternativeBasis

AlternativeBasis::AlternativeBasis(std::vector<std::string> labels, std::vector<ComplexVector> vectors)
    : labels_(std::move(labels)), vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw InvariantError("alternative basis: no vectors");
    if (labels_.size() != vectors_.size())
        throw InvariantError("alternative basis: " + std::to_string(labels_.size()) + " labels for " +
                             std::to_string(vectors_.size()) + " vectors");
    require_unique(labels_, "alternative basis");
    const auto d = vectors_.front().size();
    if (d < 1) throw DimensionError("alternative basis: empty vector");
    if (static_cast<Eigen::Index>(vectors_.size()) > d)
        throw DimensionError("alternative basis: " + std::to_string(vectors_.size()) +
                             " vectors exceed ambient dimension " + std::to_string(d));
    for (std::size_t m = 0; m < vectors_.size(); ++m) {
        if (vectors_[m].size() != d)
            throw DimensionError("alternative basis: vector " + std::to_string(m) + " has dimension " +
                                 std::to_string(vectors_[m].size()) + ", expected " + std::to_string(d));
        require_finite(vectors_[m], "alternative basis vector " + std::to_string(m));
    }
    for (std::size_t m = 0; m < vectors_.size(); ++m) {
        for (std::size_t n = m; n < vectors_.size(); ++n) {
            const Complex overlap = vectors_[m].dot(vectors_[n]);
            const double expected = m == n ? 1.0 : 0.0;
            if (std::abs(overlap - expected) > tolerance::kStructural) {
                if (m == n)
                    throw NormalizationError("alternative basis: vector " + std::to_string(m) +
                                             " not normalized: |v|^2 = " + fmt_double(overlap.real()));
                throw InvariantError("alternative basis: vectors " + std::to_string(m) + "," +
                                     std::to_string(n) + " not orthogonal: |<v" + std::to_string(m) +
                                     "|v" + std::to_string(n) + ">| = " + fmt_double(std::abs(overlap)));
            }
        }
    }
}

AlternativeBasis AlternativeBasis::canonical(int dim, std::string_view prefix, int count) {
    if (dim < 1) throw DimensionError("canonical basis: dim must be >= 1");
    if (count < 0) count = dim;
    std::vector<std::string> labels;
    std::vector<ComplexVector> vectors;
    for (int i = 0; i < count; ++i) {
        labels.push_back(std::string(prefix) + std::to_string(i + 1));
        vectors.push_back(ComplexVector::Unit(dim, i));
    }
    return {std::move(labels), std::move(vectors)};
}

AlternativeBasis AlternativeBasis::from_columns(const ComplexMatrix& columns, std::vector<std::string> labels) {
    std::vector<ComplexVector> vectors;
    for (Eigen::Index j = 0; j < columns.cols(); ++j) vectors.emplace_back(columns.col(j));
    return {std::move(labels), std::move(vectors)};
}

std::optional<std::size_t> AlternativeBasis::index_of(std::string_view label) const {
    return find_label(labels_, label);
}

bool operator==(const AlternativeBasis& a, const AlternativeBasis& b) {
    if (a.labels_ != b.labels_ || a.vectors_.size() != b.vectors_.size()) return false;
    for (std::size_t i = 0; i < a.vectors_.size(); ++i) {
        if (a.vectors_[i].size() != b.vectors_[i].size() || a.vectors_[i] != b.vectors_[i]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// DensityState

DensityState::DensityState(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "density state");
    require_finite(matrix_, "density state");
    if (matrix_.rows() < 1) throw DimensionError("density state: empty matrix");
    if (!is_hermitian(matrix_))
        throw HermiticityError("density state: not Hermitian, max|rho - rho^+| = " +
                               fmt_double(max_abs_diff(matrix_, matrix_.adjoint())));
    // Remove the anti-Hermitian rounding residue so downstream traces are real.
    matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > tolerance::kStructural)
        throw InvariantError("density state: trace " + fmt_double(tr.real()) + " != 1");
    const double min_eig = eigenvalues().minCoeff();
    if (min_eig < -tolerance::kStructural)
        throw InvariantError("density state: not positive semidefinite, smallest eigenvalue " +
                             fmt_double(min_eig));
}

DensityState DensityState::uniform(int dim) {
    if (dim < 1) throw DimensionError("uniform state: dim must be >= 1");
    return DensityState(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityState DensityState::pure(const ComplexVector& v) { return DensityState(projector_from_vector(v)); }

double DensityState::purity() const { return (matrix_ * matrix_).trace().real(); }

Eigen::VectorXd DensityState::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// ---------------------------------------------------------------------------
// ProjectorMeasure

void require_rank_one_projector(const ComplexMatrix& p, std::string_view what) {
    require_square(p, what);
    require_finite(p, what);
    const std::string w(what);
    if (!is_hermitian(p)) throw InvariantError(w + ": projector is not Hermitian");
    if (max_abs_diff(p * p, p) > tolerance::kStructural)
        throw InvariantError(w + ": projector is not idempotent");
    const double tr = p.trace().real();
    if (std::abs(tr - 1.0) > tolerance::kStructural)
        throw InvariantError(w + ": projector has rank " + fmt_double(tr) +
                             "; only rank-1 projectors are admitted");
}

ProjectorMeasure::ProjectorMeasure(std::vector<std::string> labels, std::vector<ComplexMatrix> projectors)
    : labels_(std::move(labels)), projectors_(std::move(projectors)) {
    if (projectors_.empty()) throw InvariantError("projector measure: no projectors");
    if (labels_.size() != projectors_.size())
        throw InvariantError("projector measure: label/projector count mismatch");
    require_unique(labels_, "projector measure");
    const auto d = projectors_.front().rows();
    for (std::size_t n = 0; n < projectors_.size(); ++n) {
        if (projectors_[n].rows() != d || projectors_[n].cols() != d)
            throw DimensionError("projector measure: projector " + std::to_string(n) + " is not " +
                                 std::to_string(d) + "x" + std::to_string(d));
        require_rank_one_projector(projectors_[n], "projector measure entry " + std::to_string(n));
    }
    for (std::size_t m = 0; m < projectors_.size(); ++m) {
        for (std::size_t n = m + 1; n < projectors_.size(); ++n) {
            const double off = (projectors_[m] * projectors_[n]).cwiseAbs().maxCoeff();
            if (off > tolerance::kStructural)
                throw InvariantError("projector measure: projectors " + std::to_string(m) + "," +
                                     std::to_string(n) + " not orthogonal: max|P_m P_n| = " +
                                     fmt_double(off));
        }
    }
}

const ComplexMatrix& ProjectorMeasure::projector(std::size_t i) const {
    if (i >= projectors_.size())
        throw IndexError("projector index " + std::to_string(i) + " out of range [0, " +
                         std::to_string(projectors_.size()) + ")");
    return projectors_[i];
}

std::optional<std::size_t> ProjectorMeasure::index_of(std::string_view label) const {
    return find_label(labels_, label);
}

double ProjectorMeasure::completeness_residual() const {
    ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
    for (const auto& p : projectors_) sum += p;
    return max_abs_diff(sum, ComplexMatrix::Identity(dim(), dim()));
}

// ---------------------------------------------------------------------------
// Operations

double clamp_probability(double raw, std::string_view what) {
    if (!std::isfinite(raw)) throw InvariantError(std::string(what) + ": non-finite probability");
    if (raw < -tolerance::kStructural || raw > 1.0 + tolerance::kStructural)
        throw InvariantError(std::string(what) + ": probability " + fmt_double(raw) +
                             " outside [0, 1] beyond tolerance");
    if (raw < 0.0 || raw > 1.0) {
        spdlog::debug("{}: clamped probability {:.3e} into [0, 1]", what, raw);
        return std::clamp(raw, 0.0, 1.0);
    }
    return raw;
}

ComplexMatrix projector_from_vector(const ComplexVector& v) {
    if (v.size() < 1) throw DimensionError("projector_from_vector: empty vector");
    require_finite(v, "projector_from_vector");
    const double norm2 = v.squaredNorm();
    if (std::abs(std::sqrt(norm2) - 1.0) > tolerance::kStructural)
        throw NormalizationError("projector_from_vector: |v| = " + fmt_double(std::sqrt(norm2)) +
                                 ", expected 1");
    return v * v.adjoint();
}

ProjectorMeasure measure_from_basis(const AlternativeBasis& basis) {
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(basis.size());
    for (const auto& v : basis.vectors()) projectors.push_back(projector_from_vector(v));
    return {basis.labels(), std::move(projectors)};
}

double choice_probability(const DensityState& state, const ProjectorMeasure& measure, std::size_t index) {
    const ComplexMatrix& p = measure.projector(index);
    if (p.rows() != state.dim())
        throw DimensionError("choice_probability: state dimension " + std::to_string(state.dim()) +
                             " vs measure dimension " + std::to_string(p.rows()));
    // Tr(rho P) without forming the product.
    const double raw = (state.matrix().transpose().cwiseProduct(p)).sum().real();
    return clamp_probability(raw, "choice_probability(" + measure.labels()[index] + ")");
}

std::vector<double> all_probabilities(const DensityState& state, const ProjectorMeasure& measure) {
    std::vector<double> out;
    out.reserve(measure.size());
    for (std::size_t n = 0; n < measure.size(); ++n) out.push_back(choice_probability(state, measure, n));
    return out;
}

DensityState evolve(const DensityState& state, const ComplexMatrix& u) {
    require_unitary(u, "evolve");
    if (u.rows() != state.dim())
        throw DimensionError("evolve: unitary dimension " + std::to_string(u.rows()) +
                             " vs state dimension " + std::to_string(state.dim()));
    return DensityState(u * state.matrix() * u.adjoint());
}

DensityState random_state(int dim, int rank, std::uint64_t seed) {
    if (dim < 1 || rank < 1 || rank > dim)
        throw DimensionError("random_state: need 1 <= rank <= dim, got rank " + std::to_string(rank) +
                             ", dim " + std::to_string(dim));
    const ComplexMatrix g = random_ginibre(dim, rank, seed);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityState(std::move(rho));
}

}  // namespace qdt

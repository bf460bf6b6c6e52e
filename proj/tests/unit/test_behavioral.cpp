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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qdt/behavioral.hpp"
#include "qdt/errors.hpp"

using namespace qdt;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

Prospect prospect(const ComplexVector& alt, std::initializer_list<Complex> emotion) {
    return Prospect(0, alt, EmotionVector(oracle::ket(emotion)));
}

// Partial trace over the subject factor, index = a * ds + alpha.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int da, int ds) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int s = 0; s < ds; ++s) out(i, j) += rho(i * ds + s, j * ds + s);
    return out;
}

ComplexVector unit(int dim, unsigned seed) {
    ComplexVector v = oracle::unitary(dim, seed).col(0);
    return v;
}

}  // namespace

TEST_CASE("subject space") {
    CHECK(SubjectSpace::with_dim(3).feeling_labels() == std::vector<std::string>{"s1", "s2", "s3"});
    CHECK_THROWS_AS(SubjectSpace({"joy", "joy"}), InvariantError);
    CHECK_THROWS(SubjectSpace({}));
}

TEST_CASE("emotion vectors must be normalized") {
    CHECK_THROWS_AS(EmotionVector(oracle::ket({0.5, 0.5})), NormalizationError);
    CHECK(EmotionVector::elementary(3, 1).coefficients() == oracle::ket({0, 1, 0}));
    CHECK_THROWS_AS(EmotionVector::elementary(2, 2), IndexError);
}

TEST_CASE("emotion perturbation") {
    const EmotionVector e(oracle::ket({0.6, 0.8}));
    CHECK(e.perturbed(0.0, 1).coefficients() == e.coefficients());
    const EmotionVector p = e.perturbed(0.1, 7);
    CHECK(std::abs(p.coefficients().norm() - 1.0) < 1e-12);
    CHECK(p.coefficients() == e.perturbed(0.1, 7).coefficients());
    CHECK((p.coefficients() - e.coefficients()).norm() > 1e-6);
    CHECK_THROWS_AS(e.perturbed(-1.0, 1), InvariantError);
}

TEST_CASE("prospect vector is the tensor product") {
    const Prospect p(0, oracle::ket({kH, kH}), EmotionVector(oracle::ket({0.6, Complex(0, 0.8)})));
    CHECK(p.decision_dim() == 4);
    CHECK((p.vector() - oracle::kron(oracle::ket({kH, kH}), oracle::ket({0.6, Complex(0, 0.8)}))).norm() < 1e-15);
    CHECK_THROWS_AS(Prospect(0, oracle::ket({1, 1}), EmotionVector::elementary(2, 0)), NormalizationError);
}

TEST_CASE("one-hot emotions carry no interference") {
    const DensityState rho = DensityState::uniform(4);
    const auto m = ProspectMeasure::from_basis(AlternativeBasis::canonical(2),
                                               {EmotionVector::elementary(2, 0), EmotionVector::elementary(2, 1)});
    for (const auto& p : m.prospects()) {
        const auto d = decompose_prospect(rho, p);
        CHECK(d.total == doctest::Approx(0.25));
        CHECK(d.rational == doctest::Approx(0.25));
        CHECK(d.quality == 0.0);
    }
}

TEST_CASE("hand-computed interference") {
    // State |A1> (x) (|s1> + |s2>)/sqrt2.
    const DensityState rho = DensityState::pure(oracle::ket({kH, kH, 0, 0}));
    const ComplexVector a1 = oracle::ket({1, 0});

    auto d = decompose_prospect(rho, prospect(a1, {kH, kH}));
    CHECK(d.total == doctest::Approx(1.0));
    CHECK(d.rational == doctest::Approx(0.5));
    CHECK(d.quality == doctest::Approx(0.5));

    d = decompose_prospect(rho, prospect(a1, {kH, -kH}));
    CHECK(d.total == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d.rational == doctest::Approx(0.5));
    CHECK(d.quality == doctest::Approx(-0.5));

    d = decompose_prospect(rho, prospect(a1, {kH, Complex(0, kH)}));
    CHECK(d.total == doctest::Approx(0.5));
    CHECK(d.rational == doctest::Approx(0.5));
    CHECK(std::abs(d.quality) < 1e-15);
}

TEST_CASE("decomposition matches the Born rule on the product vector") {
    for (unsigned seed = 1; seed <= 60; ++seed) {
        const int da = 2 + seed % 4, ds = 1 + seed % 4;
        const ComplexMatrix rho = oracle::density(da * ds, 1 + seed % (da * ds), seed);
        const ComplexVector a = unit(da, seed + 10);
        const ComplexVector x = unit(ds, seed + 20);
        const Prospect p(0, a, EmotionVector(x));
        const auto d = decompose_prospect(DensityState(rho), p);
        const double born = oracle::born(rho, oracle::kron(ComplexMatrix(a), ComplexMatrix(x)).col(0));
        CHECK(std::abs(d.total - born) < 1e-13);
        CHECK(std::abs(d.rational + d.quality - born) < 1e-12);
        CHECK(std::abs(d.quality_imaginary) < 1e-12);
        CHECK(std::abs(d.quality) <= 1.0 + 1e-9);
    }
}

TEST_CASE("prospect projectors are orthogonal and commute") {
    const auto basis = AlternativeBasis::from_columns(oracle::unitary(3, 4), {"A1", "A2", "A3"});
    const auto m = ProspectMeasure::from_basis(
        basis, {EmotionVector(unit(2, 1)), EmotionVector(unit(2, 2)), EmotionVector(unit(2, 3))});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const ComplexMatrix pij = oracle::matmul(m.projectors()[i], m.projectors()[j]);
            const ComplexMatrix expect = i == j ? m.projectors()[i] : ComplexMatrix::Zero(6, 6);
            CHECK(oracle::max_abs(pij - expect) < 1e-12);
            CHECK(oracle::max_abs(pij - oracle::matmul(m.projectors()[j], m.projectors()[i])) < 1e-12);
        }
    CHECK_THROWS_AS(ProspectMeasure::from_basis(basis, {EmotionVector(unit(2, 1))}), DimensionError);
}

TEST_CASE("prospect projector is P(A) (x) P(x)") {
    const Prospect p(0, unit(3, 5), EmotionVector(unit(2, 6)));
    const ComplexMatrix expect = oracle::kron(oracle::outer(p.alternative_vector), oracle::outer(p.emotion.coefficients()));
    CHECK(oracle::max_abs(prospect_projector(p) - expect) < 1e-15);
    CHECK(oracle::max_abs(emotion_projector(p.emotion) - oracle::outer(p.emotion.coefficients())) < 1e-15);
}

TEST_CASE("resolution check and projection onto prospects") {
    const auto m = ProspectMeasure::from_basis(AlternativeBasis::canonical(2),
                                               {EmotionVector(oracle::ket({kH, kH})), EmotionVector::elementary(2, 1)});
    CHECK(resolution_check(DensityState::uniform(4), m) == doctest::Approx(0.5));
    const DensityState inside = project_onto_prospects(DensityState(oracle::density(4, 4, 3)), m);
    CHECK(resolution_check(inside, m) < 1e-12);
    const auto n = normalization_diagnostics(inside, m);
    CHECK(n.normalized);
    CHECK(std::abs(n.sum_total - 1.0) < 1e-12);
    CHECK(n.split_residual < 1e-12);
}

TEST_CASE("normalization diagnostics report rational and quality sums") {
    // A superposition of the two prospects keeps all mass inside them.
    const ComplexVector v = (oracle::kron(oracle::ket({1, 0}), oracle::ket({kH, kH})).col(0) +
                             oracle::kron(oracle::ket({0, 1}), oracle::ket({0, 1})).col(0)) * kH;
    const auto m = ProspectMeasure::from_basis(AlternativeBasis::canonical(2),
                                               {EmotionVector(oracle::ket({kH, kH})), EmotionVector::elementary(2, 1)});
    const auto n = normalization_diagnostics(DensityState::pure(v), m);
    CHECK(n.sum_total == doctest::Approx(1.0));
    // f = 1/2 * (1/4 + 1/4) + 1/2, q = 1/2 * 1/2
    CHECK(n.sum_rational == doctest::Approx(0.75));
    CHECK(n.sum_quality == doctest::Approx(0.25));
    CHECK(n.rational_residual == doctest::Approx(0.25));
    CHECK(n.quality_residual == doctest::Approx(0.25));
    CHECK(n.split_residual < 1e-12);
}

TEST_CASE("behavioral sequence") {
    for (unsigned seed = 1; seed <= 30; ++seed) {
        const int da = 2 + seed % 3, ds = 2 + seed % 2, dd = da * ds;
        const DensityState rho(oracle::density(dd, dd, seed));
        const Prospect a(0, unit(da, seed + 1), EmotionVector(unit(ds, seed + 2)));
        const Prospect b(0, unit(da, seed + 3), EmotionVector(unit(ds, seed + 4)));
        const ComplexMatrix u = oracle::unitary(dd, seed + 5);
        const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);

        const DensityState post = behavioral_luders(rho, a);
        CHECK(std::abs(oracle::born(post.matrix(), a.vector()) - 1.0) < 1e-12);

        const double overlap = std::norm(a.vector().dot(b.vector()));
        CHECK(std::abs(prospect_overlap_probability(a, b) - overlap) < 1e-14);
        CHECK(std::abs(behavioral_conditional(rho, a, id, b) - overlap) < 1e-12);
        CHECK(std::abs(behavioral_conditional(rho, a, id, b) - behavioral_conditional(rho, b, id, a)) < 1e-12);

        const ComplexMatrix evolved = oracle::matmul(oracle::matmul(u, post.matrix()), oracle::dagger(u));
        CHECK(std::abs(behavioral_conditional(rho, a, u, b) - oracle::born(evolved, b.vector())) < 1e-12);
        CHECK(std::abs(behavioral_joint(rho, a, u, b) -
                       oracle::born(evolved, b.vector()) * oracle::born(rho.matrix(), a.vector())) < 1e-12);
    }
}

TEST_CASE("one-dimensional subject space reproduces the sequential values") {
    for (unsigned seed = 1; seed <= 30; ++seed) {
        const int da = 2 + seed % 5;
        const DensityState rho(oracle::density(da, 1 + seed % da, seed));
        const ComplexVector va = unit(da, seed + 1), vb = unit(da, seed + 2);
        const Prospect a(0, va, EmotionVector::elementary(1, 0));
        const Prospect b(0, vb, EmotionVector::elementary(1, 0));
        const ComplexMatrix u = oracle::unitary(da, seed + 3);
        const ComplexMatrix pa = oracle::outer(va), pb = oracle::outer(vb);
        CHECK(std::abs(prospect_probability(rho, a) - oracle::born(rho.matrix(), va)) < 1e-12);
        CHECK(std::abs(decompose_prospect(rho, a).quality) == 0.0);
        CHECK(std::abs(behavioral_joint(rho, a, u, b) - joint_probability(rho, pa, u, pb)) < 1e-12);
        CHECK(std::abs(behavioral_conditional(rho, a, u, b) - conditional_probability(rho, pa, u, pb)) < 1e-12);
    }
}

TEST_CASE("reduce_to_alternatives is the partial trace") {
    const ComplexMatrix ra = oracle::density(3, 2, 1), rs = oracle::density(2, 2, 2);
    const DensityState product(oracle::kron(ra, rs));
    CHECK(oracle::max_abs(reduce_to_alternatives(product, 3, 2).matrix() - ra) < 1e-14);
    const ComplexMatrix mixed = oracle::density(6, 6, 3);
    CHECK(oracle::max_abs(reduce_to_alternatives(DensityState(mixed), 3, 2).matrix() - partial_trace(mixed, 3, 2)) < 1e-15);
    CHECK_THROWS_AS(reduce_to_alternatives(product, 4, 2), DimensionError);
}

TEST_CASE("decision unitary") {
    const ComplexMatrix ua = oracle::unitary(2, 1), us = oracle::unitary(3, 2);
    CHECK(oracle::max_abs(decision_unitary(ua, us) - oracle::kron(ua, us)) < 1e-15);
}

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
#include "qdt/classical.hpp"
#include "qdt/errors.hpp"

using namespace qdt;

namespace {

JointTable sample_table() {
    Eigen::MatrixXd cells(2, 2);
    cells << 0.4, 0.1, 0.2, 0.3;
    return JointTable({"A1", "A2"}, {"B1", "B2"}, cells);
}

}  // namespace

TEST_CASE("joint table marginals and conditionals") {
    const JointTable t = sample_table();
    CHECK(t.row_marginal(0) == doctest::Approx(0.5));
    CHECK(t.col_marginal(0) == doctest::Approx(0.6));
    CHECK(classical_conditional(t, 0, 0) == doctest::Approx(0.8));
    CHECK(classical_conditional_given_b(t, 0, 0) == doctest::Approx(0.4 / 0.6));
}

TEST_CASE("classical asymmetry witness") {
    // Gaps |f(A|B) - f(B|A)|: (A1,B1) 2/15, (A1,B2) 0.05, (A2,B1) 1/15, (A2,B2) 0.15.
    const AsymmetryWitness w = asymmetry_witness(sample_table());
    CHECK(w.max_gap == doctest::Approx(0.15));
    CHECK(w.row == 1u);
    CHECK(w.col == 1u);
}

TEST_CASE("joint table validation") {
    Eigen::MatrixXd cells(2, 2);
    cells << 0.5, -0.1, 0.3, 0.3;
    CHECK_THROWS(JointTable({"A1", "A2"}, {"B1", "B2"}, cells));
    cells << 0.5, 0.1, 0.3, 0.3;
    CHECK_THROWS(JointTable({"A1", "A2"}, {"B1", "B2"}, cells));
    cells << 0.5, 0.5, 0.0, 0.0;
    const JointTable t({"A1", "A2"}, {"B1", "B2"}, cells);
    CHECK_THROWS_AS(classical_conditional(t, 1, 0), ZeroProbabilityConditioning);
    const AsymmetryWitness w = asymmetry_witness(t);
    CHECK(w.row == 0u);
}

TEST_CASE("symmetric table has no witness gap") {
    Eigen::MatrixXd cells(2, 2);
    cells << 0.25, 0.25, 0.25, 0.25;
    CHECK(asymmetry_witness(JointTable({"A1", "A2"}, {"B1", "B2"}, cells)).max_gap == 0.0);
}

TEST_CASE("induced joint from the quantum model") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto a = measure_from_basis(AlternativeBasis::canonical(2));
    const auto b = measure_from_basis(AlternativeBasis({"B1", "B2"}, {oracle::ket({h, h}), oracle::ket({h, -h})}));
    const DensityState zero = DensityState::pure(oracle::ket({1, 0}));
    const InducedJoint j = induced_joint_from_quantum(zero, a, ComplexMatrix::Identity(2, 2), b);
    // A first: p(B_k, A1) = 1/2 each; B first: p(A1, B_k) = 1/4 each.
    CHECK(j.forward(0, 0) == doctest::Approx(0.5));
    CHECK(j.reverse(0, 0) == doctest::Approx(0.25));
    CHECK(j.forward.sum() == doctest::Approx(1.0));
    CHECK(std::abs(j.total_difference) < 1e-12);
    CHECK_FALSE(j.interchange_symmetric());
    CHECK_FALSE(j.as_joint_table({"A1", "A2"}, {"B1", "B2"}).has_value());

    const InducedJoint same = induced_joint_from_quantum(DensityState(oracle::density(2, 2, 1)), a,
                                                         ComplexMatrix::Identity(2, 2), a);
    CHECK(same.interchange_symmetric());
    const auto table = same.as_joint_table({"A1", "A2"}, {"A1'", "A2'"});
    REQUIRE(table.has_value());
    CHECK(asymmetry_witness(*table).max_gap < 1e-12);

    const auto partial = measure_from_basis(AlternativeBasis::canonical(2, "A", 1));
    CHECK_THROWS_AS(induced_joint_from_quantum(zero, partial, ComplexMatrix::Identity(2, 2), b), IncompleteMeasureError);
}

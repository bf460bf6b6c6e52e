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

#include "qdt/errors.hpp"
#include "qdt/runner.hpp"

using namespace qdt;

namespace {

const char* kHadamardPair = R"({"ambient_dim": 2,
    "second_basis": {"labels": ["B1", "B2"],
                     "vectors": [[[0.7071067811865476, 0], [0.7071067811865476, 0]],
                                 [[0.7071067811865476, 0], [-0.7071067811865476, 0]]]},
    "initial_state": {"kind": "pure", "vector": [[1, 0], [0, 0]]}})";

}  // namespace

TEST_CASE("eval: uniform state") {
    const Report r = run_eval(parse_scenario(R"({"ambient_dim": 2})"));
    CHECK(r.number("probabilities.t0", "A1", "p") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.number("probabilities.t0", "A2", "p") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::get<bool>(*r.find("probabilities.t0", "(normalization)", "passed")));
}

TEST_CASE("eval: pure first basis vector") {
    const Report r = run_eval(parse_scenario(R"({"ambient_dim": 2, "initial_state": {"kind": "pure", "vector": [[1, 0], [0, 0]]}})"));
    CHECK(r.number("probabilities.t0", "A1", "p") == 1.0);
    CHECK(r.number("probabilities.t0", "A2", "p") == 0.0);
}

TEST_CASE("eval: one-hot emotions give q = 0") {
    const Report r = run_eval(parse_scenario(R"({"ambient_dim": 2, "initial_state": {"kind": "random", "rank": 4},
        "subject_space": {"dim": 2, "emotions": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}})"));
    CHECK(r.number("prospects.t0", "A1", "q") == 0.0);
    CHECK(r.number("prospects.t0", "A2", "q") == 0.0);
    CHECK(r.number("prospects.t0", "A1", "p") == doctest::Approx(r.number("prospects.t0", "A1", "f")));
    // Alternative probabilities come from the reduced state and still sum to one.
    CHECK(r.number("probabilities.t0", "A1", "p") + r.number("probabilities.t0", "A2", "p") == doctest::Approx(1.0));
}

TEST_CASE("eval: evolution moves the probabilities") {
    const Report r = run_eval(parse_scenario(R"({"ambient_dim": 2, "initial_state": {"kind": "pure", "vector": [[1, 0], [0, 0]]},
        "evolution": {"kind": "unitary", "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}})"));
    CHECK(r.number("probabilities.t", "A2", "p") == 1.0);
}

TEST_CASE("sequence: repeating the same immediate choice") {
    const Report r = run_sequence(parse_scenario(R"({"ambient_dim": 3, "initial_state": {"kind": "random", "rank": 3}, "seed": 4})"), "A2", "A2");
    CHECK(r.number("sequence", "forward", "conditional") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::get<std::string>(*r.find("records", "second", "time")) == "immediately_after");
}

TEST_CASE("sequence: canonical and Hadamard at u = I") {
    const Report r = run_sequence(parse_scenario(kHadamardPair), "A1", "B1");
    CHECK(r.number("sequence", "forward", "conditional") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.number("sequence", "reverse", "conditional") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.number("sequence", "forward", "joint") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.number("sequence", "reverse", "joint") == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::get<bool>(*r.find("symmetry", "conditional", "symmetric")));
    CHECK_FALSE(std::get<bool>(*r.find("symmetry", "joint", "symmetric")));
    CHECK(std::get<bool>(*r.find("identities", "joint_total", "passed")));
}

TEST_CASE("sequence: impossible first choice") {
    try {
        run_sequence(parse_scenario(kHadamardPair), "A2", "B1");
        FAIL("expected ZeroProbabilityConditioning");
    } catch (const ZeroProbabilityConditioning& e) {
        CHECK(std::string(e.what()).find("\"A2\"") != std::string::npos);
    }
    CHECK_THROWS_AS(run_sequence(parse_scenario(kHadamardPair), "A9", "B1"), IndexError);
}

TEST_CASE("sequence: reports are byte-identical on rerun") {
    const char* doc = R"({"ambient_dim": 5, "initial_state": {"kind": "random", "rank": 3},
        "evolution": {"kind": "random"}, "second_basis": {"vectors": [
        [[0,0],[1,0],[0,0],[0,0],[0,0]], [[1,0],[0,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0],[1,0]],
        [[0,0],[0,0],[1,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[1,0],[0,0]]]}, "seed": 77})";
    const std::string a = to_json(run_sequence(parse_scenario(doc), "A1", "B3"));
    const std::string b = to_json(run_sequence(parse_scenario(doc), "A1", "B3"));
    CHECK(a == b);
    CHECK(to_csv(run_sequence(parse_scenario(doc), "A1", "B3")) == to_csv(run_sequence(parse_scenario(doc), "A1", "B3")));
}

TEST_CASE("sequence refuses subject-space scenarios") {
    CHECK_THROWS_AS(run_sequence(parse_scenario(R"({"ambient_dim": 2, "subject_space": {"dim": 1, "emotions": [[[1,0]], [[1,0]]]}})"), "A1", "A2"),
                    InvariantError);
}

TEST_CASE("behavioral: labeled pair and all pairs") {
    const char* doc = R"({"ambient_dim": 2, "initial_state": {"kind": "random", "rank": 2}, "seed": 3,
        "subject_space": {"dim": 2, "emotions": [[[0.6, 0], [0.8, 0]], [[0, 0], [1, 0]]]}})";
    const Scenario s = parse_scenario(doc);
    const Report pair = run_behavioral(s, std::string("A1"), std::string("A1"));
    CHECK(pair.number("sequence", "forward", "conditional") == doctest::Approx(1.0).epsilon(1e-12));
    const Report all = run_behavioral(s);
    CHECK(all.find("pairs", "A1 -> A2", "joint") != nullptr);
    CHECK_THROWS_AS(run_behavioral(s, std::string("A1"), std::nullopt), InvariantError);
    CHECK_THROWS_AS(run_behavioral(parse_scenario(R"({"ambient_dim": 2})")), InvariantError);
}

TEST_CASE("sample: certain outcome") {
    const SampleResult r = sample_cohort(parse_scenario(R"({"ambient_dim": 2, "initial_state": {"kind": "pure", "vector": [[1, 0], [0, 0]]}})"),
                                         10000, SampleProtocol::single);
    CHECK(r.outcomes[0].count == 10000u);
    CHECK(r.outcomes[1].count == 0u);
    CHECK(r.max_abs_z == 0.0);
}

TEST_CASE("sample: counts do not depend on the thread count") {
    const Scenario s = parse_scenario(R"({"ambient_dim": 3, "initial_state": {"kind": "random", "rank": 2}, "evolution": {"kind": "random"}, "seed": 5})");
    for (auto protocol : {SampleProtocol::single, SampleProtocol::sequential}) {
        const SampleResult one = sample_cohort(s, 200000, protocol, 1);
        const SampleResult many = sample_cohort(s, 200000, protocol, 4);
        REQUIRE(one.outcomes.size() == many.outcomes.size());
        for (std::size_t i = 0; i < one.outcomes.size(); ++i) CHECK(one.outcomes[i].count == many.outcomes[i].count);
        CHECK(one.max_abs_z < kSampleZBound);
    }
}

TEST_CASE("sample: incomplete measures are rejected") {
    const Scenario s = parse_scenario(R"({"ambient_dim": 3, "alternative_basis": {"vectors": [[[1,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]]]}})");
    CHECK_THROWS_AS(sample_cohort(s, 10, SampleProtocol::single), IncompleteMeasureError);
    const Scenario b = parse_scenario(R"({"ambient_dim": 2, "subject_space": {"dim": 2, "emotions": [[[1,0],[0,0]], [[1,0],[0,0]]]}})");
    CHECK_THROWS_AS(sample_cohort(b, 10, SampleProtocol::behavioral), IncompleteMeasureError);
    CHECK_THROWS_AS(parse_sample_protocol("batch"), SchemaError);
}

TEST_CASE("sample report layout") {
    const Scenario s = parse_scenario(R"({"ambient_dim": 2})");
    const Report r = run_sample(s, 1000, SampleProtocol::single);
    CHECK(r.number("frequencies", "A1", "count") + r.number("frequencies", "A2", "count") == 1000.0);
    CHECK(r.number("frequencies", "A1", "standard_error") == doctest::Approx(std::sqrt(0.25 / 1000)));
}

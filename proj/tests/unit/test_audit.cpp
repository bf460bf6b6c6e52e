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

#include "qdt/audit.hpp"
#include "qdt/random.hpp"

using namespace qdt;

TEST_CASE("audit passes on a small sweep and finds every witness") {
    const Scenario s = parse_scenario(R"({"ambient_dim": 4, "subject_space": {"dim": 3, "emotions": [
        [[1,0],[0,0],[0,0]], [[1,0],[0,0],[0,0]], [[1,0],[0,0],[0,0]], [[1,0],[0,0],[0,0]]]}, "seed": 11})");
    const AuditReport a = run_symmetry_audit(s, 60, 2);
    for (const auto& id : a.identities) {
        CAPTURE(id.name);
        CHECK(id.passed());
        CHECK(id.checks > 0u);
    }
    for (const auto& w : a.witnesses) {
        CAPTURE(w.name);
        CHECK(w.found);
    }
    CHECK(a.witness("commuting_symmetric")->gap < 1e-12);
    CHECK(a.witness("generic_u_joint_asymmetry")->gap > 1e-3);
}

TEST_CASE("audit is independent of the thread count") {
    const Scenario s = parse_scenario(R"({"ambient_dim": 3, "seed": 1})");
    const std::string one = to_json(run_symmetry_audit(s, 20, 1).to_report());
    const std::string four = to_json(run_symmetry_audit(s, 20, 4).to_report());
    CHECK(one == four);
}

TEST_CASE("seed streams") {
    const SeedStream root(7);
    CHECK(root.child("a").seed() == SeedStream(7).child("a").seed());
    CHECK(root.child("a").seed() != root.child("b").seed());
    CHECK(root.child(std::uint64_t{0}).seed() != root.child(std::uint64_t{1}).seed());
    CHECK(root.child("a").child(std::uint64_t{3}).seed() != root.child(std::uint64_t{3}).child("a").seed());
    CHECK(SeedStream(8).child("a").seed() != root.child("a").seed());
    auto e1 = root.child("x").engine();
    auto e2 = root.child("x").engine();
    CHECK(e1() == e2());
}

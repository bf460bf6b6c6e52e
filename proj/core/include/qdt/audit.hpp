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

// Randomized audit of the sequential and behavioral identities. Every trial
// draws its dimensions, bases, states and unitaries from
// SeedStream(seed).child("audit").child(trial), so any counterexample can be
// replayed from its trial seed alone.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdt/report.hpp"
#include "qdt/scenario.hpp"

namespace qdt {

struct Counterexample {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double residual = 0.0;
    std::string detail;
};

struct IdentityResult {
    std::string name;
    double tolerance = 0.0;
    double max_residual = 0.0;
    std::size_t checks = 0;
    /// First trial whose residual reached the tolerance.
    std::optional<Counterexample> counterexample;

    bool passed() const noexcept { return !counterexample; }
};

/// Explicit instance of an asymmetry (or, for the commuting case, symmetry).
/// For asymmetry witnesses the trial with the largest gap is kept.
struct Witness {
    std::string name;
    std::string description;
    bool found = false;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double forward = 0.0;
    double reverse = 0.0;
    double gap = 0.0;
    std::string detail;
};

struct AuditReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    int max_alternative_dim = 0;
    int max_subject_dim = 0;
    std::vector<IdentityResult> identities;
    std::vector<Witness> witnesses;

    bool all_passed() const noexcept;
    const IdentityResult* identity(std::string_view name) const;
    const Witness* witness(std::string_view name) const;
    Report to_report() const;
};

/// Gaps below this are treated as numerical noise when looking for witnesses.
inline constexpr double kWitnessThreshold = 1e-6;

/// Alternative dimensions cycle through 2..max(2, ambient_dim) and subject
/// dimensions through 2..max(2, dim_S). `threads` = 0 uses the hardware count.
AuditReport run_symmetry_audit(const Scenario& s, std::size_t trials, unsigned threads = 0);

}  // namespace qdt

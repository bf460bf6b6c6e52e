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

// Scenario-level pipelines behind the CLI verbs. Each returns a Report whose
// bytes depend only on the scenario (including its seed).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/report.hpp"
#include "qdt/scenario.hpp"

namespace qdt {

/// Choice probabilities at t0 - 0 and after the scenario evolution. With a
/// subject space, alternative probabilities use the reduced state and every
/// prospect is decomposed into (p, f, q).
Report run_eval(const Scenario& s);

/// Two-step choice: `first` at t0, `second` at t. Labels may come from either
/// basis. Throws ZeroProbabilityConditioning if `first` is impossible.
Report run_sequence(const Scenario& s, std::string_view first, std::string_view second);

/// Prospect decomposition plus, for a labeled pair, the behavioral joint and
/// conditional in both orders. Without labels every prospect pair is listed.
Report run_behavioral(const Scenario& s, std::optional<std::string> first = std::nullopt,
                      std::optional<std::string> second = std::nullopt);

enum class SampleProtocol { single, sequential, behavioral };

SampleProtocol parse_sample_protocol(std::string_view name);
std::string_view to_string(SampleProtocol p) noexcept;

/// Empirical frequency of one outcome against its closed-form probability.
struct FrequencyRow {
    std::string label;
    std::uint64_t trials = 0;  // draws the frequency is taken over
    std::uint64_t count = 0;
    double frequency = 0.0;
    double probability = 0.0;
    double standard_error = 0.0;  // sqrt(p (1 - p) / trials)
    double z = 0.0;               // (frequency - probability) / standard_error; 0 when both vanish
};

struct SampleResult {
    SampleProtocol protocol = SampleProtocol::single;
    std::uint64_t n = 0;
    std::vector<FrequencyRow> outcomes;      // single, behavioral: one row per label; sequential: per pair
    std::vector<FrequencyRow> conditionals;  // sequential only: second | first
    double max_abs_z = 0.0;
};

/// Within this many standard errors a frequency counts as calibrated.
inline constexpr double kSampleZBound = 5.0;

/// Draws n decision makers. Draws are split into fixed blocks with their own
/// seed streams, so the counts do not depend on `threads` (0 = hardware).
SampleResult sample_cohort(const Scenario& s, std::uint64_t n, SampleProtocol protocol, unsigned threads = 0);

Report sample_report(const SampleResult& result, const Scenario& s);

inline Report run_sample(const Scenario& s, std::uint64_t n, SampleProtocol protocol, unsigned threads = 0) {
    return sample_report(sample_cohort(s, n, protocol, threads), s);
}

}  // namespace qdt

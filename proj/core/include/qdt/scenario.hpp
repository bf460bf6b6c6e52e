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

// Scenario documents (schema "qdt/1").
//
//   {
//     "schema": "qdt/1",
//     "ambient_dim": 2,
//     "alternative_basis": {"labels": ["A1", "A2"], "vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]},
//     "second_basis":      {"labels": [...], "vectors": [...]},
//     "initial_state": {"kind": "uniform" | "pure" | "density" | "random", "vector": ..., "matrix": ..., "rank": 1},
//     "evolution": {"kind": "identity" | "unitary" | "hamiltonian" | "random" | "product",
//                   "matrix": ..., "time": 0.0, "alternatives": {...}, "subject": {...}},
//     "subject_space": {"feelings": ["joy", "fear"], "emotions": [...], "second_emotions": [...]},
//     "tolerance": 1e-9,
//     "seed": 0
//   }
//
// Complex numbers are [re, im] arrays, vectors are arrays of complex numbers
// and matrices are row-major arrays of rows. Only "ambient_dim" is required.
// With a subject space, the state and evolution act on the decision space of
// dimension ambient_dim * dim_S; otherwise on C^ambient_dim.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/behavioral.hpp"
#include "qdt/space.hpp"

namespace qdt {

inline constexpr std::string_view kSchemaVersion = "qdt/1";
/// Upper bound on any single space dimension accepted from a scenario file.
inline constexpr int kMaxScenarioDim = 64;

struct StateSpec {
    enum class Kind { uniform, pure, density, random };
    Kind kind = Kind::uniform;
    ComplexVector vector;  // pure
    ComplexMatrix matrix;  // density
    int rank = 1;          // random

    friend bool operator==(const StateSpec& a, const StateSpec& b);
};

struct EvolutionSpec {
    enum class Kind { identity, unitary, hamiltonian, random, product };
    Kind kind = Kind::identity;
    ComplexMatrix matrix;              // unitary, hamiltonian
    double time = 0.0;                 // hamiltonian
    std::vector<EvolutionSpec> factors;  // product: {alternatives, subject}

    friend bool operator==(const EvolutionSpec& a, const EvolutionSpec& b);
};

struct SubjectSpec {
    SubjectSpace space;
    std::vector<EmotionVector> emotions;         // one per alternative_basis vector
    std::vector<EmotionVector> second_emotions;  // one per second_basis vector, or empty

    friend bool operator==(const SubjectSpec& a, const SubjectSpec& b);
};

struct Scenario {
    int ambient_dim = 1;
    AlternativeBasis alternative_basis = AlternativeBasis::canonical(1);
    std::optional<AlternativeBasis> second_basis;
    StateSpec initial_state;
    EvolutionSpec evolution;
    std::optional<SubjectSpec> subject;
    double tolerance = tolerance::kStructural;
    std::uint64_t seed = 0;

    int subject_dim() const noexcept { return subject ? subject->space.dim() : 1; }
    /// Dimension of the space the state and evolution act on.
    int decision_dim() const noexcept { return ambient_dim * subject_dim(); }

    /// rho(t0 - 0). Random states draw from the "initial_state" seed stream.
    DensityState state() const;
    /// U(t, t0) on the decision space.
    ComplexMatrix unitary() const;

    ProjectorMeasure alternative_measure() const { return measure_from_basis(alternative_basis); }
    /// The second basis if present, else the alternative basis.
    ProjectorMeasure second_measure() const;
    ProspectMeasure prospect_measure() const;
    std::optional<ProspectMeasure> second_prospect_measure() const;

    friend bool operator==(const Scenario& a, const Scenario& b);
};

/// Parses and validates. Throws SyntaxError, SchemaError (with a $-rooted
/// JSON path) or ScenarioInvariantError.
Scenario parse_scenario(std::string_view text);

/// Serializes every field explicitly; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& s);

}  // namespace qdt

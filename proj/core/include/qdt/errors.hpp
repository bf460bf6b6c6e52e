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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdt {

/// Base of every error the engine raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical contract violations. These are raised by the core modules when an
// argument does not satisfy the structural precondition of an operation.

class DimensionError : public Error {
public:
    using Error::Error;
};

class HermiticityError : public Error {
public:
    using Error::Error;
};

class UnitarityError : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// A value (state, measure, table, probability) broke one of its invariants.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Conditioning on an event whose probability is at or below the conditioning
/// threshold.
class ZeroProbabilityConditioning : public Error {
public:
    ZeroProbabilityConditioning(const std::string& what, double probability);
    double probability() const noexcept { return probability_; }

private:
    double probability_;
};

/// A measure whose projectors do not resolve the identity was used where a
/// normalized probability distribution is required.
class IncompleteMeasureError : public Error {
public:
    using Error::Error;
};

// Scenario-file errors.

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& message);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Scenario content parsed correctly but an embedded object is invalid.
class ScenarioInvariantError : public InvariantError {
public:
    ScenarioInvariantError(std::string path, const std::string& message);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace qdt

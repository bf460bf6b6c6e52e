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

#include "qdt/errors.hpp"

#include <utility>

namespace qdt {

ZeroProbabilityConditioning::ZeroProbabilityConditioning(const std::string& what, double probability)
    : Error(what), probability_(probability) {}

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": " + message),
      line_(line),
      column_(column) {}

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(path + ": " + message), path_(std::move(path)) {}

ScenarioInvariantError::ScenarioInvariantError(std::string path, const std::string& message)
    : InvariantError(path + ": " + message), path_(std::move(path)) {}

}  // namespace qdt

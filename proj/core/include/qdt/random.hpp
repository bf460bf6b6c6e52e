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

#include <cstdint>
#include <random>
#include <string_view>

namespace qdt {

/// Counter-based seed splitting.
///
/// A stream is identified by a root seed plus a path of names and indices.
/// Child seeds are pure functions of (parent, key), so introducing a new
/// draw site under a fresh name never shifts the seeds of existing sites.
class SeedStream {
public:
    constexpr explicit SeedStream(std::uint64_t root) noexcept : state_(root) {}

    SeedStream child(std::string_view name) const noexcept;
    SeedStream child(std::uint64_t index) const noexcept;

    std::uint64_t seed() const noexcept;
    std::mt19937_64 engine() const { return std::mt19937_64(seed()); }

private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace qdt

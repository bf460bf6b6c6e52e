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

#include "qdt/random.hpp"

namespace qdt {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

constexpr std::uint64_t kNameTag = 0x6e616d65ULL;   // "name"
constexpr std::uint64_t kIndexTag = 0x696e6478ULL;  // "indx"

std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

SeedStream SeedStream::child(std::string_view name) const noexcept {
    return SeedStream(splitmix64(state_ ^ splitmix64(fnv1a(name) ^ kNameTag)));
}

SeedStream SeedStream::child(std::uint64_t index) const noexcept {
    return SeedStream(splitmix64(state_ ^ splitmix64(index ^ (kIndexTag << 32))));
}

std::uint64_t SeedStream::seed() const noexcept { return splitmix64(state_); }

}  // namespace qdt

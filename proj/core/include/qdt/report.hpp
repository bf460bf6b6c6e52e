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
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qdt {

using ReportScalar = std::variant<double, bool, std::int64_t, std::uint64_t, std::string>;

/// One value in a report, addressed by (section, label, quantity).
/// Example: ("probabilities.t0", "A1", "p", 0.5).
struct ReportEntry {
    std::string section;
    std::string label;
    std::string quantity;
    ReportScalar value;
};

/// Ordered collection of report values. Probabilities are range-checked and
/// residuals must be non-negative; both violations raise InvariantError.
class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void add_probability(std::string section, std::string label, std::string quantity, double value);
    /// Records residual, tolerance and passed = residual < tolerance.
    void add_residual(std::string section, std::string label, double residual, double tolerance);
    void add(std::string section, std::string label, std::string quantity, ReportScalar value);
    void set_metadata(std::string key, ReportScalar value);

    const std::string& command() const noexcept { return command_; }
    const std::vector<ReportEntry>& entries() const noexcept { return entries_; }
    const std::vector<std::pair<std::string, ReportScalar>>& metadata() const noexcept { return metadata_; }

    /// First entry matching the address, or nullptr.
    const ReportScalar* find(std::string_view section, std::string_view label, std::string_view quantity) const;
    double number(std::string_view section, std::string_view label, std::string_view quantity) const;

private:
    std::string command_;
    std::vector<ReportEntry> entries_;
    std::vector<std::pair<std::string, ReportScalar>> metadata_;
};

enum class OutputFormat { json, csv, table };

OutputFormat parse_output_format(std::string_view name);

/// Significant digits used for human-readable output.
inline constexpr int kTableDigits = 12;

/// {"command", "metadata": {...}, "results": {section: {label: {quantity: value}}}}.
/// Doubles use shortest round-trip representation.
std::string to_json(const Report& report);
/// Rows of section,label,quantity,value with 17 significant digits.
std::string to_csv(const Report& report);
/// Aligned columns with kTableDigits significant digits.
std::string to_table(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// Writes through a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace qdt

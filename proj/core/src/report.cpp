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

#include "qdt/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "qdt/errors.hpp"
#include "qdt/space.hpp"

namespace qdt {

namespace {

using ordered_json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_double(double x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string scalar_text(const ReportScalar& v, int digits) {
    return std::visit(overloaded{
                          [&](double d) { return format_double(d, digits); },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                          [](std::int64_t i) { return std::to_string(i); },
                          [](std::uint64_t u) { return std::to_string(u); },
                          [](const std::string& s) { return s; },
                      },
                      v);
}

ordered_json scalar_json(const ReportScalar& v) {
    return std::visit(overloaded{
                          [](double d) { return std::isfinite(d) ? ordered_json(d) : ordered_json(nullptr); },
                          [](bool b) { return ordered_json(b); },
                          [](std::int64_t i) { return ordered_json(i); },
                          [](std::uint64_t u) { return ordered_json(u); },
                          [](const std::string& s) { return ordered_json(s); },
                      },
                      v);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void Report::add_probability(std::string section, std::string label, std::string quantity, double value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw InvariantError("report: probability " + section + "/" + label + "/" + quantity + " = " +
                             format_double(value, 6) + " outside [0, 1]");
    add(std::move(section), std::move(label), std::move(quantity), value);
}

void Report::add_residual(std::string section, std::string label, double residual, double tolerance) {
    if (!(residual >= 0.0))
        throw InvariantError("report: residual " + section + "/" + label + " is negative or NaN");
    entries_.push_back({section, label, "residual", residual});
    entries_.push_back({section, label, "tolerance", tolerance});
    entries_.push_back({std::move(section), std::move(label), "passed", residual < tolerance});
}

void Report::add(std::string section, std::string label, std::string quantity, ReportScalar value) {
    entries_.push_back({std::move(section), std::move(label), std::move(quantity), std::move(value)});
}

void Report::set_metadata(std::string key, ReportScalar value) {
    for (auto& [k, v] : metadata_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    metadata_.emplace_back(std::move(key), std::move(value));
}

const ReportScalar* Report::find(std::string_view section, std::string_view label, std::string_view quantity) const {
    for (const auto& e : entries_) {
        if (e.section == section && e.label == label && e.quantity == quantity) return &e.value;
    }
    return nullptr;
}

double Report::number(std::string_view section, std::string_view label, std::string_view quantity) const {
    const ReportScalar* v = find(section, label, quantity);
    if (!v) throw IndexError("report: no entry " + std::string(section) + "/" + std::string(label) + "/" + std::string(quantity));
    if (const auto* d = std::get_if<double>(v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
    if (const auto* u = std::get_if<std::uint64_t>(v)) return static_cast<double>(*u);
    throw InvariantError("report: entry is not numeric");
}

OutputFormat parse_output_format(std::string_view name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "table") return OutputFormat::table;
    throw SchemaError("--format", "unknown output format \"" + std::string(name) + "\"");
}

std::string to_json(const Report& report) {
    ordered_json doc;
    doc["command"] = report.command();
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : report.metadata()) meta[k] = scalar_json(v);
    doc["metadata"] = std::move(meta);
    ordered_json results = ordered_json::object();
    for (const auto& e : report.entries()) results[e.section][e.label][e.quantity] = scalar_json(e.value);
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
    std::ostringstream os;
    os << "section,label,quantity,value\n";
    for (const auto& [k, v] : report.metadata())
        os << "metadata," << csv_field(k) << ",value," << csv_field(scalar_text(v, 17)) << "\n";
    for (const auto& e : report.entries())
        os << csv_field(e.section) << "," << csv_field(e.label) << "," << csv_field(e.quantity) << ","
           << csv_field(scalar_text(e.value, 17)) << "\n";
    return os.str();
}

std::string to_table(const Report& report) {
    std::vector<std::array<std::string, 4>> rows;
    rows.push_back({"section", "label", "quantity", "value"});
    for (const auto& [k, v] : report.metadata()) rows.push_back({"metadata", k, "", scalar_text(v, kTableDigits)});
    for (const auto& e : report.entries())
        rows.push_back({e.section, e.label, e.quantity, scalar_text(e.value, kTableDigits)});
    std::array<std::size_t, 4> width{};
    for (const auto& r : rows)
        for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream os;
    os << "# " << report.command() << "\n";
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < 4; ++c) {
            os << r[c];
            if (c + 1 < 4) os << std::string(width[c] - r[c].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

std::string render(const Report& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::json: return to_json(report);
        case OutputFormat::csv: return to_csv(report);
        case OutputFormat::table: return to_table(report);
    }
    return {};
}

void write_atomically(const std::filesystem::path& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    fs::path tmp = dir / ("." + path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("cannot move report into " + path.string() + ": " + ec.message());
    }
}

}  // namespace qdt

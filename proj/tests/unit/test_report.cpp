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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdt/errors.hpp"
#include "qdt/report.hpp"

using namespace qdt;

namespace {

Report sample_report() {
    Report r("eval");
    r.set_metadata("seed", std::uint64_t{42});
    r.add_probability("probabilities.t0", "A1", "p", 1.0 / 3.0);
    r.add_probability("probabilities.t0", "A2", "p", 2.0 / 3.0);
    r.add_residual("checks", "normalization", 1.1e-16, 1e-9);
    r.add("checks", "note", "text", std::string("a,b"));
    return r;
}

}  // namespace

TEST_CASE("reports reject impossible values") {
    Report r("x");
    CHECK_THROWS_AS(r.add_probability("s", "l", "p", 1.5), InvariantError);
    CHECK_THROWS_AS(r.add_probability("s", "l", "p", std::nan("")), InvariantError);
    CHECK_THROWS_AS(r.add_residual("s", "l", -1e-3, 1e-9), InvariantError);
}

TEST_CASE("residual entries record pass or fail") {
    const Report r = sample_report();
    REQUIRE(r.find("checks", "normalization", "passed") != nullptr);
    CHECK(std::get<bool>(*r.find("checks", "normalization", "passed")));
    CHECK(r.number("probabilities.t0", "A2", "p") == 2.0 / 3.0);
    CHECK_THROWS_AS(r.number("nope", "A", "p"), IndexError);
}

TEST_CASE("JSON layout") {
    const auto j = nlohmann::json::parse(to_json(sample_report()));
    CHECK(j["command"] == "eval");
    CHECK(j["metadata"]["seed"] == 42);
    CHECK(j["results"]["probabilities.t0"]["A1"]["p"].get<double>() == 1.0 / 3.0);
    CHECK(j["results"]["checks"]["note"]["text"] == "a,b");
}

TEST_CASE("CSV and JSON agree to 15 significant digits") {
    const Report r = sample_report();
    const auto j = nlohmann::json::parse(to_json(r));
    std::istringstream csv(to_csv(r));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "section,label,quantity,value");
    int compared = 0;
    while (std::getline(csv, line)) {
        if (line.rfind("probabilities.t0,", 0) != 0) continue;
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1), c3 = line.find(',', c2 + 1);
        const std::string label = line.substr(c1 + 1, c2 - c1 - 1);
        const double v = std::stod(line.substr(c3 + 1));
        const double w = j["results"]["probabilities.t0"][label]["p"].get<double>();
        char a[32], b[32];
        std::snprintf(a, sizeof a, "%.15g", v);
        std::snprintf(b, sizeof b, "%.15g", w);
        CHECK(std::string(a) == std::string(b));
        ++compared;
    }
    CHECK(compared == 2);
    CHECK(to_csv(r).find("\"a,b\"") != std::string::npos);
}

TEST_CASE("table output uses 12 significant digits") {
    const std::string t = to_table(sample_report());
    CHECK(t.find("0.333333333333") != std::string::npos);
    CHECK(t.find("0.3333333333333") == std::string::npos);
    CHECK(t.rfind("# eval", 0) == 0);
}

TEST_CASE("output format names") {
    CHECK(parse_output_format("csv") == OutputFormat::csv);
    CHECK_THROWS_AS(parse_output_format("xml"), SchemaError);
}

TEST_CASE("atomic write leaves no temporary behind") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qdt_report_test";
    fs::create_directories(dir);
    const fs::path out = dir / "r.json";
    write_atomically(out, "first");
    write_atomically(out, "second");
    std::ifstream in(out);
    std::string content;
    std::getline(in, content);
    CHECK(content == "second");
    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    CHECK(files == 1);
    fs::remove_all(dir);
}

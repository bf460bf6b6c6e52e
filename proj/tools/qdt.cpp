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

// qdt: command-line front end.
//
//   qdt eval       --scenario s.json
//   qdt sequence   --scenario s.json --first A1 --second B2
//   qdt behavioral --scenario s.json [--first A1 --second B1]
//   qdt sample     --scenario s.json -n 1000000 --protocol sequential
//   qdt audit      --scenario s.json --trials 1000
//   qdt validate   --scenario s.json [--canonical]
//
// Exit codes: 0 ok, 2 validation error, 3 runtime (conditioning) error,
// 4 audit counterexample, 1 anything unexpected.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "qdt/audit.hpp"
#include "qdt/errors.hpp"
#include "qdt/report.hpp"
#include "qdt/runner.hpp"
#include "qdt/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitAudit = 4;

struct Options {
    std::string scenario_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::string out;
    bool verbose = false;

    std::string first;
    std::string second;
    std::uint64_t n = 100000;
    std::string protocol = "single";
    std::size_t trials = 1000;
    unsigned threads = 0;
    bool canonical = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qdt::SchemaError("--scenario", "cannot read scenario file \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

qdt::Scenario load(const Options& o) {
    qdt::Scenario s = qdt::parse_scenario(read_input(o.scenario_path));
    if (o.seed) s.seed = *o.seed;
    if (o.tolerance) {
        if (!(*o.tolerance > 0.0 && *o.tolerance <= 1.0))
            throw qdt::SchemaError("--tolerance", "expected a value in (0, 1]");
        s.tolerance = *o.tolerance;
    }
    return s;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text << std::flush;
    else
        qdt::write_atomically(o.out, text);
}

qdt::Report validate_report(const qdt::Scenario& s) {
    qdt::Report r("validate");
    r.set_metadata("schema", std::string(qdt::kSchemaVersion));
    r.set_metadata("seed", s.seed);
    r.set_metadata("tolerance", s.tolerance);
    r.add("scenario", "ambient_dim", "value", std::int64_t{s.ambient_dim});
    r.add("scenario", "decision_dim", "value", std::int64_t{s.decision_dim()});
    r.add("scenario", "alternatives", "count", static_cast<std::uint64_t>(s.alternative_basis.size()));
    r.add("scenario", "alternatives", "complete", s.alternative_measure().is_complete());
    if (s.second_basis) {
        r.add("scenario", "second", "count", static_cast<std::uint64_t>(s.second_basis->size()));
        r.add("scenario", "second", "complete", s.second_measure().is_complete());
    }
    r.add("scenario", "subject_space", "present", s.subject.has_value());
    r.add("scenario", "state", "purity", s.state().purity());
    r.add("scenario", "valid", "value", true);
    return r;
}

int run(const std::string& verb, const Options& o) {
    const qdt::OutputFormat format = qdt::parse_output_format(o.format);
    const qdt::Scenario s = load(o);
    if (verb == "eval") {
        emit(o, qdt::render(qdt::run_eval(s), format));
    } else if (verb == "sequence") {
        emit(o, qdt::render(qdt::run_sequence(s, o.first, o.second), format));
    } else if (verb == "behavioral") {
        std::optional<std::string> first, second;
        if (!o.first.empty()) first = o.first;
        if (!o.second.empty()) second = o.second;
        emit(o, qdt::render(qdt::run_behavioral(s, first, second), format));
    } else if (verb == "sample") {
        emit(o, qdt::render(qdt::run_sample(s, o.n, qdt::parse_sample_protocol(o.protocol), o.threads), format));
    } else if (verb == "audit") {
        const qdt::AuditReport audit = qdt::run_symmetry_audit(s, o.trials, o.threads);
        emit(o, qdt::render(audit.to_report(), format));
        if (!audit.all_passed()) {
            for (const auto& id : audit.identities) {
                if (id.counterexample)
                    std::cerr << "qdt: audit: identity " << id.name << " failed at trial " << id.counterexample->trial
                              << " (residual " << id.counterexample->residual << ", tolerance " << id.tolerance
                              << "): " << id.counterexample->detail << "\n";
            }
            return kExitAudit;
        }
    } else if (verb == "validate") {
        emit(o, o.canonical ? qdt::emit_scenario(s) : qdt::render(validate_report(s), format));
    }
    return kExitOk;
}

int fail(int code, const std::string& message, const std::string& hint = {}) {
    std::cerr << "qdt: " << message << "\n";
    if (!hint.empty()) std::cerr << "hint: " << hint << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum decision theory engine"};
    app.require_subcommand(1);
    Options o;

    auto shared = [&](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario_path, "Scenario JSON file, or - for stdin")->required();
        sub->add_option("--format", o.format, "json, csv or table")->capture_default_str();
        sub->add_option("--seed", o.seed, "Override the scenario seed");
        sub->add_option("--tolerance", o.tolerance, "Override the scenario tolerance");
        sub->add_option("--out", o.out, "Write the report to this file (atomic rename)");
        sub->add_flag("-v,--verbose", o.verbose, "Debug logging on stderr");
    };

    auto* eval = app.add_subcommand("eval", "Choice probabilities and prospect decomposition");
    shared(eval);
    auto* sequence = app.add_subcommand("sequence", "Joint and conditional probabilities of two choices");
    shared(sequence);
    sequence->add_option("--first", o.first, "Label chosen at t0")->required();
    sequence->add_option("--second", o.second, "Label chosen at t")->required();
    auto* behavioral = app.add_subcommand("behavioral", "Prospect probabilities with emotions");
    shared(behavioral);
    auto* bf = behavioral->add_option("--first", o.first, "Prospect chosen at t0");
    auto* bs = behavioral->add_option("--second", o.second, "Prospect chosen at t");
    bf->needs(bs);
    bs->needs(bf);
    auto* sample = app.add_subcommand("sample", "Monte-Carlo cohort of decision makers");
    shared(sample);
    sample->add_option("-n", o.n, "Number of decision makers")->check(CLI::PositiveNumber)->capture_default_str();
    sample->add_option("--protocol", o.protocol, "single, sequential or behavioral")->capture_default_str();
    sample->add_option("--threads", o.threads, "Worker threads (0 = hardware)")->capture_default_str();
    auto* audit = app.add_subcommand("audit", "Randomized check of the sequential and behavioral identities");
    shared(audit);
    audit->add_option("--trials", o.trials, "Number of random trials")->check(CLI::PositiveNumber)->capture_default_str();
    audit->add_option("--threads", o.threads, "Worker threads (0 = hardware)")->capture_default_str();
    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    shared(validate);
    validate->add_flag("--canonical", o.canonical, "Print the scenario with every field made explicit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    spdlog::set_level(o.verbose ? spdlog::level::debug : spdlog::level::warn);
    const std::string verb = app.get_subcommands().front()->get_name();

    try {
        return run(verb, o);
    } catch (const qdt::SyntaxError& e) {
        return fail(kExitValidation, e.what(), "the scenario file is not valid JSON");
    } catch (const qdt::SchemaError& e) {
        return fail(kExitValidation, std::string("schema error at ") + e.what(),
                    "check the field against the schema documented in the README");
    } catch (const qdt::ScenarioInvariantError& e) {
        return fail(kExitValidation, std::string("invalid scenario at ") + e.what());
    } catch (const qdt::ZeroProbabilityConditioning& e) {
        return fail(kExitRuntime, e.what());
    } catch (const qdt::IncompleteMeasureError& e) {
        return fail(kExitRuntime, e.what(), "add basis vectors until the projectors sum to the identity");
    } catch (const qdt::IndexError& e) {
        return fail(kExitValidation, e.what());
    } catch (const qdt::Error& e) {
        return fail(kExitValidation, e.what());
    } catch (const std::exception& e) {
        return fail(kExitInternal, std::string("internal error: ") + e.what());
    }
}

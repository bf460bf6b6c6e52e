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

#include "qdt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>
#include <utility>

#include <json.hpp>

#include "qdt/errors.hpp"
#include "qdt/random.hpp"

namespace qdt {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool same_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

std::string type_name(const json& j) { return j.type_name(); }

std::string at(const std::string& path, std::string_view key) { return path + "." + std::string(key); }
std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object, got " + type_name(j));
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw SchemaError(at(path, key), "unknown field");
    }
}

const json& require_field(const json& obj, std::string_view key, const std::string& path) {
    const auto it = obj.find(std::string(key));
    if (it == obj.end()) throw SchemaError(at(path, key), "missing required field");
    return *it;
}

const json* optional_field(const json& obj, std::string_view key) {
    const auto it = obj.find(std::string(key));
    return it == obj.end() ? nullptr : &*it;
}

int get_int(const json& j, const std::string& path, int lo, int hi) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer, got " + type_name(j));
    const auto v = j.get<std::int64_t>();
    if (v < lo || v > hi)
        throw SchemaError(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    return static_cast<int>(v);
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number, got " + type_name(j));
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "number is not finite");
    return v;
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string, got " + type_name(j));
    return j.get<std::string>();
}

Complex get_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError(path, "expected a complex number as a two-element [re, im] array");
    return {get_number(j[0], at(path, 0)), get_number(j[1], at(path, 1))};
}

ComplexVector get_vector(const json& j, const std::string& path, int dim) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of complex numbers, got " + type_name(j));
    if (static_cast<int>(j.size()) != dim)
        throw SchemaError(path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = get_complex(j[static_cast<std::size_t>(i)], at(path, static_cast<std::size_t>(i)));
    return v;
}

ComplexMatrix get_matrix(const json& j, const std::string& path, int dim) {
    if (!j.is_array()) throw SchemaError(path, "expected a row-major array of rows, got " + type_name(j));
    if (static_cast<int>(j.size()) != dim)
        throw SchemaError(path, "expected " + std::to_string(dim) + " rows, got " + std::to_string(j.size()));
    ComplexMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) m.row(r) = get_vector(j[static_cast<std::size_t>(r)], at(path, static_cast<std::size_t>(r)), dim).transpose();
    return m;
}

std::vector<std::string> get_labels(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of strings, got " + type_name(j));
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], at(path, i)));
    return out;
}

template <class F>
auto with_invariant_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const ScenarioInvariantError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioInvariantError(path, e.what());
    }
}

AlternativeBasis parse_basis(const json& j, const std::string& path, int dim, std::string_view prefix) {
    require_object(j, path);
    check_keys(j, path, {"labels", "vectors"});
    const json& vectors_json = require_field(j, "vectors", path);
    const std::string vpath = at(path, "vectors");
    if (!vectors_json.is_array() || vectors_json.empty())
        throw SchemaError(vpath, "expected a non-empty array of vectors");
    std::vector<ComplexVector> vectors;
    for (std::size_t i = 0; i < vectors_json.size(); ++i) vectors.push_back(get_vector(vectors_json[i], at(vpath, i), dim));
    std::vector<std::string> labels;
    if (const json* l = optional_field(j, "labels")) {
        labels = get_labels(*l, at(path, "labels"));
        if (labels.size() != vectors.size())
            throw SchemaError(at(path, "labels"), std::to_string(labels.size()) + " labels for " +
                                                      std::to_string(vectors.size()) + " vectors");
    } else {
        for (std::size_t i = 0; i < vectors.size(); ++i) labels.push_back(std::string(prefix) + std::to_string(i + 1));
    }
    return with_invariant_path(path, [&] { return AlternativeBasis(std::move(labels), std::move(vectors)); });
}

const std::pair<std::string_view, StateSpec::Kind> kStateKinds[] = {
    {"uniform", StateSpec::Kind::uniform},
    {"pure", StateSpec::Kind::pure},
    {"density", StateSpec::Kind::density},
    {"random", StateSpec::Kind::random},
};

const std::pair<std::string_view, EvolutionSpec::Kind> kEvolutionKinds[] = {
    {"identity", EvolutionSpec::Kind::identity},
    {"unitary", EvolutionSpec::Kind::unitary},
    {"hamiltonian", EvolutionSpec::Kind::hamiltonian},
    {"random", EvolutionSpec::Kind::random},
    {"product", EvolutionSpec::Kind::product},
};

template <class Kind, std::size_t N>
Kind lookup_kind(const std::pair<std::string_view, Kind> (&table)[N], const std::string& name, const std::string& path) {
    for (const auto& [k, v] : table)
        if (k == name) return v;
    std::string options;
    for (const auto& [k, v] : table) options += (options.empty() ? "" : ", ") + std::string(k);
    throw SchemaError(path, "unknown kind \"" + name + "\"; expected one of " + options);
}

template <class Kind, std::size_t N>
std::string_view kind_name(const std::pair<std::string_view, Kind> (&table)[N], Kind kind) {
    for (const auto& [k, v] : table)
        if (v == kind) return k;
    return "?";
}

StateSpec parse_state(const json& j, const std::string& path, int dim) {
    require_object(j, path);
    StateSpec s;
    s.kind = lookup_kind(kStateKinds, get_string(require_field(j, "kind", path), at(path, "kind")), at(path, "kind"));
    switch (s.kind) {
        case StateSpec::Kind::uniform:
            check_keys(j, path, {"kind"});
            break;
        case StateSpec::Kind::pure:
            check_keys(j, path, {"kind", "vector"});
            s.vector = get_vector(require_field(j, "vector", path), at(path, "vector"), dim);
            break;
        case StateSpec::Kind::density:
            check_keys(j, path, {"kind", "matrix"});
            s.matrix = get_matrix(require_field(j, "matrix", path), at(path, "matrix"), dim);
            break;
        case StateSpec::Kind::random:
            check_keys(j, path, {"kind", "rank"});
            s.rank = 1;
            if (const json* r = optional_field(j, "rank")) s.rank = get_int(*r, at(path, "rank"), 1, dim);
            break;
    }
    return s;
}

EvolutionSpec parse_evolution(const json& j, const std::string& path, int dim, int dim_a, int dim_s, bool allow_product) {
    require_object(j, path);
    EvolutionSpec e;
    e.kind = lookup_kind(kEvolutionKinds, get_string(require_field(j, "kind", path), at(path, "kind")), at(path, "kind"));
    switch (e.kind) {
        case EvolutionSpec::Kind::identity:
        case EvolutionSpec::Kind::random:
            check_keys(j, path, {"kind"});
            break;
        case EvolutionSpec::Kind::unitary:
            check_keys(j, path, {"kind", "matrix"});
            e.matrix = get_matrix(require_field(j, "matrix", path), at(path, "matrix"), dim);
            break;
        case EvolutionSpec::Kind::hamiltonian:
            check_keys(j, path, {"kind", "matrix", "time"});
            e.matrix = get_matrix(require_field(j, "matrix", path), at(path, "matrix"), dim);
            e.time = get_number(require_field(j, "time", path), at(path, "time"));
            break;
        case EvolutionSpec::Kind::product:
            if (!allow_product)
                throw SchemaError(at(path, "kind"), "\"product\" evolution requires a subject_space and cannot be nested");
            check_keys(j, path, {"kind", "alternatives", "subject"});
            e.factors.push_back(parse_evolution(require_field(j, "alternatives", path), at(path, "alternatives"), dim_a, dim_a, 1, false));
            e.factors.push_back(parse_evolution(require_field(j, "subject", path), at(path, "subject"), dim_s, dim_s, 1, false));
            break;
    }
    return e;
}

ComplexMatrix materialize(const EvolutionSpec& e, int dim, const SeedStream& stream) {
    switch (e.kind) {
        case EvolutionSpec::Kind::identity: return ComplexMatrix::Identity(dim, dim);
        case EvolutionSpec::Kind::unitary:
            require_unitary(e.matrix, "evolution");
            return e.matrix;
        case EvolutionSpec::Kind::hamiltonian: return unitary_from_hamiltonian(e.matrix, e.time);
        case EvolutionSpec::Kind::random: return random_unitary(dim, stream.seed());
        case EvolutionSpec::Kind::product: break;
    }
    return {};
}

std::vector<EmotionVector> parse_emotions(const json& j, const std::string& path, int dim_s, std::size_t expected) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of emotion vectors");
    if (j.size() != expected)
        throw ScenarioInvariantError(path, "expected one emotion vector per alternative (" + std::to_string(expected) +
                                               "), got " + std::to_string(j.size()));
    std::vector<EmotionVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = at(path, i);
        ComplexVector b = get_vector(j[i], p, dim_s);
        out.push_back(with_invariant_path(p, [&] { return EmotionVector(std::move(b)); }));
    }
    return out;
}

ordered_json emit_complex(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json emit_vector(const ComplexVector& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(emit_complex(v(i)));
    return out;
}

ordered_json emit_matrix(const ComplexMatrix& m) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(emit_complex(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json emit_basis(const AlternativeBasis& b) {
    ordered_json out;
    out["labels"] = b.labels();
    ordered_json vectors = ordered_json::array();
    for (const auto& v : b.vectors()) vectors.push_back(emit_vector(v));
    out["vectors"] = std::move(vectors);
    return out;
}

ordered_json emit_evolution(const EvolutionSpec& e) {
    ordered_json out;
    out["kind"] = std::string(kind_name(kEvolutionKinds, e.kind));
    switch (e.kind) {
        case EvolutionSpec::Kind::identity:
        case EvolutionSpec::Kind::random: break;
        case EvolutionSpec::Kind::unitary: out["matrix"] = emit_matrix(e.matrix); break;
        case EvolutionSpec::Kind::hamiltonian:
            out["matrix"] = emit_matrix(e.matrix);
            out["time"] = e.time;
            break;
        case EvolutionSpec::Kind::product:
            out["alternatives"] = emit_evolution(e.factors.at(0));
            out["subject"] = emit_evolution(e.factors.at(1));
            break;
    }
    return out;
}

ComplexMatrix build_unitary(const EvolutionSpec& e, int dim_a, int dim_s, const SeedStream& stream) {
    if (e.kind == EvolutionSpec::Kind::product)
        return decision_unitary(materialize(e.factors.at(0), dim_a, stream.child("alternatives")),
                                materialize(e.factors.at(1), dim_s, stream.child("subject")));
    return materialize(e, dim_a * dim_s, stream);
}

}  // namespace

// ---------------------------------------------------------------------------

bool operator==(const StateSpec& a, const StateSpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case StateSpec::Kind::uniform: return true;
        case StateSpec::Kind::pure: return same_matrix(a.vector, b.vector);
        case StateSpec::Kind::density: return same_matrix(a.matrix, b.matrix);
        case StateSpec::Kind::random: return a.rank == b.rank;
    }
    return false;
}

bool operator==(const EvolutionSpec& a, const EvolutionSpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case EvolutionSpec::Kind::identity:
        case EvolutionSpec::Kind::random: return true;
        case EvolutionSpec::Kind::unitary: return same_matrix(a.matrix, b.matrix);
        case EvolutionSpec::Kind::hamiltonian: return a.time == b.time && same_matrix(a.matrix, b.matrix);
        case EvolutionSpec::Kind::product: return a.factors == b.factors;
    }
    return false;
}

bool operator==(const SubjectSpec& a, const SubjectSpec& b) {
    auto same = [](const std::vector<EmotionVector>& x, const std::vector<EmotionVector>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!same_matrix(x[i].coefficients(), y[i].coefficients())) return false;
        return true;
    };
    return a.space == b.space && same(a.emotions, b.emotions) && same(a.second_emotions, b.second_emotions);
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.ambient_dim == b.ambient_dim && a.alternative_basis == b.alternative_basis &&
           a.second_basis == b.second_basis && a.initial_state == b.initial_state && a.evolution == b.evolution &&
           a.subject == b.subject && a.tolerance == b.tolerance && a.seed == b.seed;
}

DensityState Scenario::state() const {
    const int d = decision_dim();
    switch (initial_state.kind) {
        case StateSpec::Kind::uniform: return DensityState::uniform(d);
        case StateSpec::Kind::pure: return DensityState::pure(initial_state.vector);
        case StateSpec::Kind::density: return DensityState(initial_state.matrix);
        case StateSpec::Kind::random:
            return random_state(d, initial_state.rank, SeedStream(seed).child("initial_state").seed());
    }
    throw InvariantError("unknown state kind");
}

ComplexMatrix Scenario::unitary() const {
    return build_unitary(evolution, ambient_dim, subject_dim(), SeedStream(seed).child("evolution"));
}

ProjectorMeasure Scenario::second_measure() const {
    return measure_from_basis(second_basis ? *second_basis : alternative_basis);
}

ProspectMeasure Scenario::prospect_measure() const {
    if (!subject) throw InvariantError("scenario has no subject_space; prospects are undefined");
    return ProspectMeasure::from_basis(alternative_basis, subject->emotions);
}

std::optional<ProspectMeasure> Scenario::second_prospect_measure() const {
    if (!subject || !second_basis || subject->second_emotions.empty()) return std::nullopt;
    return ProspectMeasure::from_basis(*second_basis, subject->second_emotions);
}

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        if (const auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
        throw SyntaxError(msg, line, column);
    }

    const std::string root = "$";
    require_object(doc, root);
    check_keys(doc, root,
               {"schema", "ambient_dim", "alternative_basis", "second_basis", "initial_state", "evolution",
                "subject_space", "tolerance", "seed"});

    if (const json* s = optional_field(doc, "schema")) {
        const std::string version = get_string(*s, at(root, "schema"));
        if (version != kSchemaVersion)
            throw SchemaError(at(root, "schema"), "unsupported schema \"" + version + "\"; expected \"" +
                                                      std::string(kSchemaVersion) + "\"");
    }

    Scenario sc;
    sc.ambient_dim = get_int(require_field(doc, "ambient_dim", root), at(root, "ambient_dim"), 1, kMaxScenarioDim);
    const int da = sc.ambient_dim;

    if (const json* b = optional_field(doc, "alternative_basis"))
        sc.alternative_basis = parse_basis(*b, at(root, "alternative_basis"), da, "A");
    else
        sc.alternative_basis = AlternativeBasis::canonical(da, "A");

    if (const json* b = optional_field(doc, "second_basis")) {
        sc.second_basis = parse_basis(*b, at(root, "second_basis"), da, "B");
        std::set<std::string> first(sc.alternative_basis.labels().begin(), sc.alternative_basis.labels().end());
        for (const auto& l : sc.second_basis->labels()) {
            if (first.count(l))
                throw ScenarioInvariantError(at(at(root, "second_basis"), "labels"),
                                             "label \"" + l + "\" also names an alternative_basis vector");
        }
    }

    if (const json* sj = optional_field(doc, "subject_space")) {
        const std::string path = at(root, "subject_space");
        require_object(*sj, path);
        check_keys(*sj, path, {"feelings", "dim", "emotions", "second_emotions"});
        std::optional<SubjectSpace> space;
        const json* feelings = optional_field(*sj, "feelings");
        const json* dim = optional_field(*sj, "dim");
        if (feelings) {
            auto labels = get_labels(*feelings, at(path, "feelings"));
            if (labels.empty() || static_cast<int>(labels.size()) > kMaxScenarioDim)
                throw SchemaError(at(path, "feelings"), "expected 1.." + std::to_string(kMaxScenarioDim) + " feelings");
            space = with_invariant_path(at(path, "feelings"), [&] { return SubjectSpace(std::move(labels)); });
            if (dim && get_int(*dim, at(path, "dim"), 1, kMaxScenarioDim) != space->dim())
                throw ScenarioInvariantError(at(path, "dim"), "dim disagrees with the number of feelings");
        } else if (dim) {
            space = SubjectSpace::with_dim(get_int(*dim, at(path, "dim"), 1, kMaxScenarioDim));
        } else {
            throw SchemaError(at(path, "feelings"), "missing required field (or give \"dim\")");
        }
        if (da * space->dim() > kMaxScenarioDim)
            throw SchemaError(path, "decision space dimension " + std::to_string(da * space->dim()) + " exceeds " +
                                        std::to_string(kMaxScenarioDim));
        SubjectSpec subject{*space, {}, {}};
        subject.emotions = parse_emotions(require_field(*sj, "emotions", path), at(path, "emotions"), space->dim(),
                                          sc.alternative_basis.size());
        if (const json* se = optional_field(*sj, "second_emotions")) {
            if (!sc.second_basis)
                throw SchemaError(at(path, "second_emotions"), "requires a second_basis");
            subject.second_emotions =
                parse_emotions(*se, at(path, "second_emotions"), space->dim(), sc.second_basis->size());
        }
        sc.subject = std::move(subject);
    }

    const int dd = sc.decision_dim();
    if (const json* s = optional_field(doc, "initial_state")) sc.initial_state = parse_state(*s, at(root, "initial_state"), dd);
    if (const json* e = optional_field(doc, "evolution"))
        sc.evolution = parse_evolution(*e, at(root, "evolution"), dd, da, sc.subject_dim(), sc.subject.has_value());

    if (const json* t = optional_field(doc, "tolerance")) {
        sc.tolerance = get_number(*t, at(root, "tolerance"));
        if (!(sc.tolerance > 0.0 && sc.tolerance <= 1.0))
            throw SchemaError(at(root, "tolerance"), "expected a value in (0, 1]");
    }
    if (const json* s = optional_field(doc, "seed")) {
        if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0))
            throw SchemaError(at(root, "seed"), "expected a non-negative integer");
        sc.seed = s->get<std::uint64_t>();
    }

    // Materialize once so that every embedded object is checked here.
    with_invariant_path(at(root, "initial_state"), [&] { return sc.state(); });
    with_invariant_path(at(root, "evolution"), [&] { return sc.unitary(); });
    if (sc.subject) {
        with_invariant_path(at(at(root, "subject_space"), "emotions"), [&] { return sc.prospect_measure(); });
        with_invariant_path(at(at(root, "subject_space"), "second_emotions"), [&] { return sc.second_prospect_measure(); });
    }
    return sc;
}

std::string emit_scenario(const Scenario& s) {
    ordered_json doc;
    doc["schema"] = std::string(kSchemaVersion);
    doc["ambient_dim"] = s.ambient_dim;
    doc["alternative_basis"] = emit_basis(s.alternative_basis);
    if (s.second_basis) doc["second_basis"] = emit_basis(*s.second_basis);

    ordered_json state;
    state["kind"] = std::string(kind_name(kStateKinds, s.initial_state.kind));
    switch (s.initial_state.kind) {
        case StateSpec::Kind::uniform: break;
        case StateSpec::Kind::pure: state["vector"] = emit_vector(s.initial_state.vector); break;
        case StateSpec::Kind::density: state["matrix"] = emit_matrix(s.initial_state.matrix); break;
        case StateSpec::Kind::random: state["rank"] = s.initial_state.rank; break;
    }
    doc["initial_state"] = std::move(state);
    doc["evolution"] = emit_evolution(s.evolution);

    if (s.subject) {
        ordered_json subject;
        subject["feelings"] = s.subject->space.feeling_labels();
        ordered_json emotions = ordered_json::array();
        for (const auto& e : s.subject->emotions) emotions.push_back(emit_vector(e.coefficients()));
        subject["emotions"] = std::move(emotions);
        if (!s.subject->second_emotions.empty()) {
            ordered_json second = ordered_json::array();
            for (const auto& e : s.subject->second_emotions) second.push_back(emit_vector(e.coefficients()));
            subject["second_emotions"] = std::move(second);
        }
        doc["subject_space"] = std::move(subject);
    }
    doc["tolerance"] = s.tolerance;
    doc["seed"] = s.seed;
    return doc.dump(2) + "\n";
}

}  // namespace qdt

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

#include "qdt/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "parallel.hpp"
#include "qdt/errors.hpp"
#include "qdt/random.hpp"

namespace qdt {

namespace {

constexpr std::uint64_t kSampleBlock = std::uint64_t{1} << 16;

void scenario_metadata(Report& r, const Scenario& s) {
    r.set_metadata("schema", std::string(kSchemaVersion));
    r.set_metadata("seed", s.seed);
    r.set_metadata("tolerance", s.tolerance);
    r.set_metadata("epsilon_conditioning", kConditioningEpsilon);
    r.set_metadata("ambient_dim", std::int64_t{s.ambient_dim});
    if (s.subject) {
        r.set_metadata("subject_dim", std::int64_t{s.subject_dim()});
        r.set_metadata("decision_dim", std::int64_t{s.decision_dim()});
    }
}

DensityState alternative_state(const Scenario& s, const DensityState& state) {
    return s.subject ? reduce_to_alternatives(state, s.ambient_dim, s.subject_dim()) : state;
}

void add_measure(Report& r, const std::string& section, const DensityState& state, const ProjectorMeasure& m,
                 double tol) {
    const auto p = all_probabilities(state, m);
    for (std::size_t i = 0; i < p.size(); ++i) r.add_probability(section, m.labels()[i], "p", p[i]);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    r.add(section, "(sum)", "p", sum);
    if (m.is_complete()) {
        r.add_residual(section, "(normalization)", std::abs(sum - 1.0), tol);
    } else {
        r.add(section, "(normalization)", "complete", false);
        r.add(section, "(normalization)", "completeness_residual", m.completeness_residual());
    }
}

void add_prospects(Report& r, const std::string& section, const DensityState& state, const ProspectMeasure& m,
                   const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto d = decompose_prospect(state, m.prospect(i));
        r.add_probability(section, labels[i], "p", d.total);
        r.add_probability(section, labels[i], "f", std::clamp(d.rational, 0.0, 1.0));
        r.add(section, labels[i], "q", d.quality);
        r.add(section, labels[i], "q_imaginary", d.quality_imaginary);
    }
    const auto n = normalization_diagnostics(state, m);
    const std::string nsec = section + ".normalization";
    r.add(nsec, "sum", "p", n.sum_total);
    r.add(nsec, "sum", "f", n.sum_rational);
    r.add(nsec, "sum", "q", n.sum_quality);
    r.add(nsec, "resolution", "residual", n.resolution_residual);
    r.add(nsec, "resolution", "normalized", n.normalized);
    r.add(nsec, "rational", "residual", n.rational_residual);
    r.add(nsec, "quality", "residual", n.quality_residual);
    r.add(nsec, "split", "residual", n.split_residual);
}

struct Resolved {
    const ProjectorMeasure* measure;
    std::size_t index;
    std::string_view basis_name;
};

std::string known_labels(const Scenario& s) {
    std::string out;
    for (const auto& l : s.alternative_basis.labels()) out += (out.empty() ? "" : ", ") + l;
    if (s.second_basis)
        for (const auto& l : s.second_basis->labels()) out += ", " + l;
    return out;
}

Resolved resolve(const Scenario& s, const ProjectorMeasure& a, const ProjectorMeasure& b, std::string_view label) {
    if (auto i = a.index_of(label)) return {&a, *i, "alternative_basis"};
    if (s.second_basis)
        if (auto i = b.index_of(label)) return {&b, *i, "second_basis"};
    throw IndexError("unknown label \"" + std::string(label) + "\"; known labels: " + known_labels(s));
}

ZeroProbabilityConditioning impossible_first(std::string_view verb, std::string_view label, double prior) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", prior);
    return ZeroProbabilityConditioning(std::string(verb) + ": cannot condition on \"" + std::string(label) +
                                           "\": p = " + buf + " at t0 - 0 is below epsilon_conditioning; choose a "
                                           "label with nonzero prior probability",
                                       prior);
}

void add_pair(Report& r, const std::string& label, double prior, double joint, std::optional<double> conditional) {
    r.add_probability("sequence", label, "prior", prior);
    r.add_probability("sequence", label, "joint", joint);
    if (conditional)
        r.add_probability("sequence", label, "conditional", *conditional);
    else
        r.add("sequence", label, "conditional", std::string("undefined"));
}

void add_symmetry(Report& r, const SymmetryReport& sym) {
    r.add("symmetry", "joint", "gap", std::abs(sym.joint_forward - sym.joint_reverse));
    r.add("symmetry", "joint", "symmetric", sym.joint_symmetric);
    if (sym.conditional_forward && sym.conditional_reverse) {
        r.add("symmetry", "conditional", "gap", std::abs(*sym.conditional_forward - *sym.conditional_reverse));
        r.add("symmetry", "conditional", "symmetric", sym.conditional_symmetric);
    } else {
        r.add("symmetry", "conditional", "symmetric", std::string("undefined"));
    }
    r.add("symmetry", "tolerance", "value", sym.tolerance);
}

void add_record(Report& r, std::string_view name, const ChoiceRecord& c) {
    const std::string label(name);
    r.add("records", label, "measure", c.measure_label);
    r.add("records", label, "outcome", static_cast<std::int64_t>(c.outcome_index));
    r.add("records", label, "time", std::string(to_string(c.time_tag)));
}

std::optional<double> try_conditional(double prior, double joint) {
    if (prior <= kConditioningEpsilon) return std::nullopt;
    return clamp_probability(joint / prior, "conditional probability");
}

void require_normalized(const std::vector<double>& p, std::string_view what) {
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::abs(sum - 1.0) > tolerance::kStructural) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", sum);
        throw IncompleteMeasureError(std::string(what) + ": probabilities sum to " + buf +
                                     ", not 1; sampling needs a complete measure");
    }
}

FrequencyRow make_row(std::string label, std::uint64_t count, std::uint64_t trials, double p) {
    FrequencyRow row;
    row.label = std::move(label);
    row.trials = trials;
    row.count = count;
    row.probability = p;
    row.frequency = trials ? static_cast<double>(count) / static_cast<double>(trials) : 0.0;
    row.standard_error = trials ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 0.0;
    const double diff = row.frequency - p;
    if (row.standard_error > 0.0)
        row.z = diff / row.standard_error;
    else
        row.z = std::abs(diff) <= tolerance::kAlgebraic ? 0.0 : std::numeric_limits<double>::infinity();
    return row;
}

// Counts per category over n draws; each block of kSampleBlock draws has its
// own seed stream so the totals are independent of the thread count.
template <class MakeDrawer>
std::vector<std::uint64_t> blocked_counts(std::uint64_t n, std::size_t categories, const SeedStream& stream,
                                          unsigned threads, const MakeDrawer& make_drawer) {
    const std::uint64_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
    std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(categories, 0));
    detail::parallel_for(blocks, threads, [&](std::size_t b) {
        auto engine = stream.child(static_cast<std::uint64_t>(b)).engine();
        auto draw = make_drawer();
        const std::uint64_t begin = b * kSampleBlock;
        const std::uint64_t end = std::min(n, begin + kSampleBlock);
        for (std::uint64_t i = begin; i < end; ++i) ++partial[b][draw(engine)];
    });
    std::vector<std::uint64_t> counts(categories, 0);
    for (const auto& p : partial)
        for (std::size_t c = 0; c < categories; ++c) counts[c] += p[c];
    return counts;
}

}  // namespace

Report run_eval(const Scenario& s) {
    Report r("eval");
    scenario_metadata(r, s);
    const DensityState state0 = s.state();
    const DensityState state_t = evolve(state0, s.unitary());
    const ProjectorMeasure a = s.alternative_measure();

    add_measure(r, "probabilities.t0", alternative_state(s, state0), a, s.tolerance);
    add_measure(r, "probabilities.t", alternative_state(s, state_t), a, s.tolerance);
    if (s.second_basis) {
        const ProjectorMeasure b = s.second_measure();
        add_measure(r, "second.t0", alternative_state(s, state0), b, s.tolerance);
        add_measure(r, "second.t", alternative_state(s, state_t), b, s.tolerance);
    }
    if (s.subject) {
        const ProspectMeasure m = s.prospect_measure();
        add_prospects(r, "prospects.t0", state0, m, s.alternative_basis.labels());
        add_prospects(r, "prospects.t", state_t, m, s.alternative_basis.labels());
        if (auto m2 = s.second_prospect_measure()) {
            add_prospects(r, "second_prospects.t0", state0, *m2, s.second_basis->labels());
            add_prospects(r, "second_prospects.t", state_t, *m2, s.second_basis->labels());
        }
    }
    return r;
}

Report run_sequence(const Scenario& s, std::string_view first, std::string_view second) {
    if (s.subject)
        throw InvariantError("sequence: the scenario has a subject_space, so alternative projectors are "
                             "degenerate on the decision space; use the behavioral verb");
    Report r("sequence");
    scenario_metadata(r, s);
    r.set_metadata("first", std::string(first));
    r.set_metadata("second", std::string(second));

    const ProjectorMeasure a = s.alternative_measure();
    const ProjectorMeasure b = s.second_measure();
    const Resolved f = resolve(s, a, b, first);
    const Resolved g = resolve(s, a, b, second);
    const ComplexMatrix& pf = f.measure->projector(f.index);
    const ComplexMatrix& pg = g.measure->projector(g.index);

    const DensityState state0 = s.state();
    const ComplexMatrix u = s.unitary();
    const double prior_f = choice_probability(state0, *f.measure, f.index);
    const double prior_g = choice_probability(state0, *g.measure, g.index);
    if (prior_f <= kConditioningEpsilon) throw impossible_first("sequence", first, prior_f);

    const double joint_fwd = joint_probability(state0, pf, u, pg);
    const double joint_rev = joint_probability(state0, pg, u, pf);
    const auto cond_fwd = try_conditional(prior_f, joint_fwd);
    const auto cond_rev = try_conditional(prior_g, joint_rev);

    add_pair(r, "forward", prior_f, joint_fwd, cond_fwd);
    add_pair(r, "reverse", prior_g, joint_rev, cond_rev);
    const ComplexVector& vf = (f.measure == &a ? s.alternative_basis : *s.second_basis).vector(f.index);
    const ComplexVector& vg = (g.measure == &a ? s.alternative_basis : *s.second_basis).vector(g.index);
    r.add_probability("sequence", "immediate", "overlap", immediate_conditional(vf, vg));

    auto sym = make_symmetry_report(cond_fwd, cond_rev, joint_fwd, joint_rev, s.tolerance);
    add_symmetry(r, sym);

    if (f.measure->is_complete() && g.measure->is_complete()) {
        const MarginalReport m = marginal_check(state0, *f.measure, u, *g.measure);
        r.add_residual("identities", "conditional_sums", m.conditional_sum_residual, s.tolerance);
        r.add_residual("identities", "joint_marginals", m.joint_marginal_residual, s.tolerance);
        r.add_residual("identities", "joint_total", m.total_residual, s.tolerance);
        r.add_residual("identities", "antisymmetric_total", m.antisymmetric_residual, s.tolerance);
        r.add("identities", "skipped_conditions", "count", static_cast<std::uint64_t>(m.skipped_conditions));
    } else {
        r.add("identities", "marginals", "skipped", std::string("incomplete measure"));
    }

    const TimeTag later = s.evolution.kind == EvolutionSpec::Kind::identity ? TimeTag::immediately_after : TimeTag::later;
    add_record(r, "first", {std::string(f.basis_name), f.index, TimeTag::at});
    add_record(r, "second", {std::string(g.basis_name), g.index, later});
    return r;
}

Report run_behavioral(const Scenario& s, std::optional<std::string> first, std::optional<std::string> second) {
    if (!s.subject) throw InvariantError("behavioral: the scenario has no subject_space");
    if (first.has_value() != second.has_value())
        throw InvariantError("behavioral: give both --first and --second, or neither");
    Report r("behavioral");
    scenario_metadata(r, s);

    const DensityState state0 = s.state();
    const ComplexMatrix u = s.unitary();
    const ProspectMeasure m = s.prospect_measure();
    const auto m2 = s.second_prospect_measure();
    add_prospects(r, "prospects.t0", state0, m, s.alternative_basis.labels());
    if (m2) add_prospects(r, "second_prospects.t0", state0, *m2, s.second_basis->labels());

    auto resolve_prospect = [&](const std::string& label) -> const Prospect& {
        if (auto i = s.alternative_basis.index_of(label)) return m.prospect(*i);
        if (s.second_basis) {
            if (auto i = s.second_basis->index_of(label)) {
                if (!m2)
                    throw InvariantError("behavioral: \"" + label +
                                         "\" has no emotion vector; add subject_space.second_emotions");
                return m2->prospect(*i);
            }
        }
        throw IndexError("unknown label \"" + label + "\"; known labels: " + known_labels(s));
    };

    if (first) {
        r.set_metadata("first", *first);
        r.set_metadata("second", *second);
        const Prospect& pa = resolve_prospect(*first);
        const Prospect& pb = resolve_prospect(*second);
        const double prior_a = prospect_probability(state0, pa);
        const double prior_b = prospect_probability(state0, pb);
        if (prior_a <= kConditioningEpsilon) throw impossible_first("behavioral", *first, prior_a);
        const double joint_fwd = behavioral_joint(state0, pa, u, pb);
        const double joint_rev = behavioral_joint(state0, pb, u, pa);
        const auto cond_fwd = try_conditional(prior_a, joint_fwd);
        const auto cond_rev = try_conditional(prior_b, joint_rev);
        add_pair(r, "forward", prior_a, joint_fwd, cond_fwd);
        add_pair(r, "reverse", prior_b, joint_rev, cond_rev);
        r.add_probability("sequence", "immediate", "overlap", prospect_overlap_probability(pa, pb));
        add_symmetry(r, make_symmetry_report(cond_fwd, cond_rev, joint_fwd, joint_rev, s.tolerance));
    } else {
        const ProspectMeasure& second_m = m2 ? *m2 : m;
        const auto& second_labels = m2 ? s.second_basis->labels() : s.alternative_basis.labels();
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double prior = prospect_probability(state0, m.prospect(i));
            for (std::size_t k = 0; k < second_m.size(); ++k) {
                const std::string label = s.alternative_basis.labels()[i] + " -> " + second_labels[k];
                const double joint = behavioral_joint(state0, m.prospect(i), u, second_m.prospect(k));
                r.add_probability("pairs", label, "joint", joint);
                if (auto c = try_conditional(prior, joint))
                    r.add_probability("pairs", label, "conditional", *c);
                else
                    r.add("pairs", label, "conditional", std::string("undefined"));
            }
        }
    }
    return r;
}

SampleProtocol parse_sample_protocol(std::string_view name) {
    if (name == "single") return SampleProtocol::single;
    if (name == "sequential") return SampleProtocol::sequential;
    if (name == "behavioral") return SampleProtocol::behavioral;
    throw SchemaError("--protocol", "unknown protocol \"" + std::string(name) + "\"; expected single, sequential or behavioral");
}

std::string_view to_string(SampleProtocol p) noexcept {
    switch (p) {
        case SampleProtocol::single: return "single";
        case SampleProtocol::sequential: return "sequential";
        case SampleProtocol::behavioral: return "behavioral";
    }
    return "?";
}

SampleResult sample_cohort(const Scenario& s, std::uint64_t n, SampleProtocol protocol, unsigned threads) {
    if (n == 0) throw InvariantError("sample: n must be at least 1");
    SampleResult out;
    out.protocol = protocol;
    out.n = n;
    const SeedStream stream = SeedStream(s.seed).child("sample").child(to_string(protocol));
    const DensityState state0 = s.state();

    auto finish_rows = [&] {
        for (const auto* rows : {&out.outcomes, &out.conditionals})
            for (const auto& row : *rows) out.max_abs_z = std::max(out.max_abs_z, std::abs(row.z));
    };

    switch (protocol) {
        case SampleProtocol::single: {
            const ProjectorMeasure a = s.alternative_measure();
            const auto p = all_probabilities(alternative_state(s, state0), a);
            require_normalized(p, "sample (single)");
            const std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
            const auto counts = blocked_counts(n, p.size(), stream, threads, [&] {
                return [d = dist](std::mt19937_64& e) mutable { return d(e); };
            });
            for (std::size_t i = 0; i < p.size(); ++i) out.outcomes.push_back(make_row(a.labels()[i], counts[i], n, p[i]));
            break;
        }
        case SampleProtocol::behavioral: {
            if (!s.subject) throw InvariantError("sample (behavioral): the scenario has no subject_space");
            const ProspectMeasure m = s.prospect_measure();
            std::vector<double> p;
            for (const auto& pr : m.prospects()) p.push_back(prospect_probability(state0, pr));
            require_normalized(p, "sample (behavioral)");
            const std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
            const auto counts = blocked_counts(n, p.size(), stream, threads, [&] {
                return [d = dist](std::mt19937_64& e) mutable { return d(e); };
            });
            for (std::size_t i = 0; i < p.size(); ++i)
                out.outcomes.push_back(make_row(s.alternative_basis.labels()[i], counts[i], n, p[i]));
            break;
        }
        case SampleProtocol::sequential: {
            if (s.subject)
                throw InvariantError("sample (sequential): the scenario has a subject_space; use --protocol behavioral");
            const ProjectorMeasure a = s.alternative_measure();
            const ProjectorMeasure b = s.second_measure();
            const ComplexMatrix u = s.unitary();
            const auto p1 = all_probabilities(state0, a);
            require_normalized(p1, "sample (sequential, first choice)");
            const std::size_t na = a.size(), nb = b.size();
            // Second-choice distribution after each possible first outcome:
            // Lueders reduction, evolution, then the Born rule on the second measure.
            std::vector<std::discrete_distribution<std::size_t>> second(na);
            for (std::size_t i = 0; i < na; ++i) {
                if (p1[i] <= kConditioningEpsilon) {
                    second[i] = std::discrete_distribution<std::size_t>(nb, 0.0, 1.0, [](double) { return 1.0; });
                    continue;
                }
                const auto p2 = all_probabilities(evolve(luders_reduce(state0, a.projector(i)), u), b);
                require_normalized(p2, "sample (sequential, second choice)");
                second[i] = std::discrete_distribution<std::size_t>(p2.begin(), p2.end());
            }
            const std::discrete_distribution<std::size_t> first(p1.begin(), p1.end());
            const auto counts = blocked_counts(n, na * nb, stream, threads, [&] {
                return [d1 = first, d2 = second, nb](std::mt19937_64& e) mutable {
                    const std::size_t i = d1(e);
                    return i * nb + d2[i](e);
                };
            });
            for (std::size_t i = 0; i < na; ++i) {
                std::uint64_t first_count = 0;
                for (std::size_t k = 0; k < nb; ++k) first_count += counts[i * nb + k];
                for (std::size_t k = 0; k < nb; ++k) {
                    const std::string pair = a.labels()[i] + " -> " + b.labels()[k];
                    const double joint = joint_probability(state0, a.projector(i), u, b.projector(k));
                    out.outcomes.push_back(make_row(pair, counts[i * nb + k], n, joint));
                    if (first_count > 0 && p1[i] > kConditioningEpsilon) {
                        const double cond = conditional_probability(state0, a.projector(i), u, b.projector(k));
                        out.conditionals.push_back(
                            make_row(b.labels()[k] + " | " + a.labels()[i], counts[i * nb + k], first_count, cond));
                    }
                }
            }
            break;
        }
    }
    finish_rows();
    return out;
}

Report sample_report(const SampleResult& result, const Scenario& s) {
    Report r("sample");
    scenario_metadata(r, s);
    r.set_metadata("protocol", std::string(to_string(result.protocol)));
    r.set_metadata("n", result.n);
    auto emit = [&](const std::string& section, const std::vector<FrequencyRow>& rows) {
        for (const auto& row : rows) {
            r.add(section, row.label, "count", row.count);
            r.add(section, row.label, "trials", row.trials);
            r.add_probability(section, row.label, "frequency", row.frequency);
            r.add_probability(section, row.label, "probability", row.probability);
            r.add(section, row.label, "standard_error", row.standard_error);
            r.add(section, row.label, "z", row.z);
        }
    };
    emit("frequencies", result.outcomes);
    if (!result.conditionals.empty()) emit("conditionals", result.conditionals);
    r.add("calibration", "max_abs_z", "value", result.max_abs_z);
    r.add("calibration", "max_abs_z", "bound", kSampleZBound);
    r.add("calibration", "max_abs_z", "passed", result.max_abs_z <= kSampleZBound);
    return r;
}

}  // namespace qdt

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

#include "qdt/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "parallel.hpp"
#include "qdt/behavioral.hpp"
#include "qdt/errors.hpp"
#include "qdt/random.hpp"
#include "qdt/sequential.hpp"

namespace qdt {

namespace {

enum Id : std::size_t {
    kTrialCompleted,
    kChoiceNormalization,
    kLudersCertainty,
    kConditionalSums,
    kJointMarginals,
    kJointTotal,
    kAntisymmetricTotal,
    kFactorizedJoint,
    kChoiceReproducibility,
    kImmediateSymmetry,
    kImmediateOverlap,
    kConditionalSymmetryAtIdentity,
    kCommutingEqualPriors,
    kCommutingJointSymmetry,
    kCompositional,
    kZeroConditioning,
    kDecomposition,
    kQualityReal,
    kQualityBounds,
    kBehavioralNormalization,
    kBehavioralSplit,
    kProspectOrthogonality,
    kBehavioralLudersCertainty,
    kBehavioralImmediateOverlap,
    kBehavioralConditionalSymmetry,
    kBehavioralCommutingJointSymmetry,
    kSubjectDimOne,
    kBehavioralCompositional,
    kIdentityCount
};

struct IdentitySpec {
    const char* name;
    double tolerance;
};

constexpr std::array<IdentitySpec, kIdentityCount> kIdentities{{
    {"trial_completed", 0.5},
    {"choice_normalization", 1e-9},
    {"luders_certainty", 1e-9},
    {"conditional_sums", 1e-9},
    {"joint_marginals", 1e-9},
    {"joint_total", 1e-9},
    {"antisymmetric_total", 1e-9},
    {"factorized_joint", 1e-12},
    {"choice_reproducibility", 1e-9},
    {"immediate_conditional_symmetry", 1e-12},
    {"immediate_conditional_overlap", 1e-12},
    {"conditional_symmetry_at_identity", 1e-12},
    {"commuting_equal_priors", 1e-9},
    {"commuting_joint_symmetry", 1e-12},
    {"compositional_equivalence", 1e-12},
    {"zero_conditioning_raises", 0.5},
    {"decomposition", 1e-12},
    {"quality_real", 1e-9},
    {"quality_bounds", 1e-9},
    {"behavioral_normalization", 1e-9},
    {"behavioral_split", 1e-9},
    {"prospect_orthogonality", 1e-12},
    {"behavioral_luders_certainty", 1e-9},
    {"behavioral_immediate_overlap", 1e-12},
    {"behavioral_conditional_symmetry", 1e-12},
    {"behavioral_commuting_joint_symmetry", 1e-12},
    {"subject_dim_one_degeneracy", 1e-12},
    {"behavioral_compositional", 1e-12},
}};

enum Wid : std::size_t {
    kGenericJoint,
    kGenericConditional,
    kIdentityJoint,
    kCommutingSymmetric,
    kBehavioralIdentityJoint,
    kBehavioralGenericJoint,
    kSharedAlternative,
    kWitnessCount
};

struct WitnessSpec {
    const char* name;
    const char* description;
    bool keep_first;  // symmetric witness: first hit; asymmetry: largest gap
};

constexpr std::array<WitnessSpec, kWitnessCount> kWitnesses{{
    {"generic_u_joint_asymmetry", "p(B,t,A,t0) != p(A,t,B,t0) under a generic evolution", false},
    {"generic_u_conditional_asymmetry", "p(B,t|A,t0) != p(A,t|B,t0) under a generic evolution", false},
    {"identity_joint_asymmetry",
     "u = I with non-commuting projectors: conditionals agree but joints differ", false},
    {"commuting_symmetric", "u = I with commuting projectors: conditional and joint both symmetric", true},
    {"behavioral_identity_joint_asymmetry", "u = I prospects: behavioral joints differ in the two orders", false},
    {"behavioral_generic_u_joint_asymmetry", "generic decision-space evolution: behavioral joints differ", false},
    {"shared_alternative_joint_asymmetry",
     "u = I prospects on the same alternative with different emotions: joints differ", false},
}};

struct Sample {
    bool checked = false;
    std::size_t checks = 0;
    double residual = 0.0;
    std::string detail;
};

struct WitnessSample {
    bool found = false;
    double forward = 0.0;
    double reverse = 0.0;
    double gap = 0.0;
    std::string detail;
};

struct TrialOutcome {
    std::uint64_t seed = 0;
    std::array<Sample, kIdentityCount> ids;
    std::array<WitnessSample, kWitnessCount> ws;
};

std::string fmt_detail(const char* format, int a = 0, int b = 0, int c = 0, int d = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

template <class Detail>
void record(TrialOutcome& t, Id id, double residual, Detail&& detail) {
    Sample& s = t.ids[id];
    ++s.checks;
    if (!s.checked || std::isnan(residual) || residual > s.residual) {
        s.checked = true;
        s.residual = std::isnan(residual) ? std::numeric_limits<double>::infinity() : residual;
        s.detail = detail();
    }
}

template <class Detail>
void asymmetry(TrialOutcome& t, Wid w, double forward, double reverse, Detail&& detail) {
    const double gap = std::abs(forward - reverse);
    WitnessSample& s = t.ws[w];
    if (gap > kWitnessThreshold && gap > s.gap) s = {true, forward, reverse, gap, detail()};
}

std::vector<std::string> numbered(const char* prefix, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

double trace_prob(const DensityState& state, const ComplexMatrix& p) { return (state.matrix() * p).trace().real(); }

ComplexVector random_unit(int dim, std::uint64_t seed) {
    ComplexVector v = random_ginibre(dim, 1, seed).col(0);
    return v / v.norm();
}

struct Dims {
    int da;
    int ds;
};

Dims trial_dims(std::size_t trial, int max_a, int max_s) {
    const std::size_t na = static_cast<std::size_t>(max_a - 1);
    const std::size_t ns = static_cast<std::size_t>(max_s - 1);
    return {2 + static_cast<int>(trial % na), 2 + static_cast<int>((trial / na) % ns)};
}

void sequential_checks(TrialOutcome& t, const SeedStream& st, int da) {
    auto eng = st.child("rank").engine();
    const int rank = std::uniform_int_distribution<int>(1, da)(eng);
    const DensityState rho = random_state(da, rank, st.child("state").seed());
    const AlternativeBasis ab = AlternativeBasis::from_columns(random_unitary(da, st.child("basis_a").seed()), numbered("A", da));
    const AlternativeBasis bb = AlternativeBasis::from_columns(random_unitary(da, st.child("basis_b").seed()), numbered("B", da));
    const ProjectorMeasure ma = measure_from_basis(ab);
    const ProjectorMeasure mb = measure_from_basis(bb);
    const ComplexMatrix u = random_unitary(da, st.child("u").seed());
    const ComplexMatrix id = ComplexMatrix::Identity(da, da);
    const auto pa = all_probabilities(rho, ma);
    const auto pb = all_probabilities(rho, mb);
    const int n_a = static_cast<int>(ma.size());

    for (const auto* p : {&pa, &pb}) {
        const double sum = std::accumulate(p->begin(), p->end(), 0.0);
        record(t, kChoiceNormalization, std::abs(sum - 1.0), [&] { return fmt_detail("dim=%d rank=%d", da, rank); });
    }

    const MarginalReport m = marginal_check(rho, ma, u, mb);
    auto md = [&] { return fmt_detail("dim=%d rank=%d skipped=%d", da, rank, static_cast<int>(m.skipped_conditions)); };
    record(t, kConditionalSums, m.conditional_sum_residual, md);
    record(t, kJointMarginals, m.joint_marginal_residual, md);
    record(t, kJointTotal, m.total_residual, md);
    record(t, kAntisymmetricTotal, m.antisymmetric_residual, md);

    // Commuting family: the A basis permuted and rephased.
    std::vector<int> perm(static_cast<std::size_t>(da));
    std::iota(perm.begin(), perm.end(), 0);
    auto peng = st.child("permutation").engine();
    std::shuffle(perm.begin(), perm.end(), peng);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::vector<ComplexVector> cv;
    for (int k = 0; k < da; ++k) cv.push_back(std::polar(1.0, phase(peng)) * ab.vector(static_cast<std::size_t>(perm[k])));
    const AlternativeBasis cb(numbered("C", da), cv);
    const ProjectorMeasure mc = measure_from_basis(cb);
    const auto pc = all_probabilities(rho, mc);

    for (int n = 0; n < n_a; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const ComplexMatrix& pan = ma.projector(un);
        const bool possible = pa[un] > kConditioningEpsilon;
        if (possible) {
            const DensityState post = luders_reduce(rho, pan);
            record(t, kLudersCertainty, std::abs(trace_prob(post, pan) - 1.0),
                   [&] { return fmt_detail("dim=%d rank=%d n=%d", da, rank, n); });
            for (int j = 0; j < n_a; ++j) {
                const double c = conditional_probability(rho, pan, id, ma.projector(static_cast<std::size_t>(j)));
                record(t, kChoiceReproducibility, std::abs(c - (j == n ? 1.0 : 0.0)),
                       [&] { return fmt_detail("dim=%d n=%d m=%d", da, n, j); });
            }
        }
        for (int k = 0; k < static_cast<int>(mb.size()); ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const ComplexMatrix& pbk = mb.projector(uk);
            auto nk = [&] { return fmt_detail("dim=%d rank=%d n=%d k=%d", da, rank, n, k); };
            const double overlap = immediate_conditional(ab.vector(un), bb.vector(uk));
            const double j_id_fwd = joint_probability(rho, pan, id, pbk);
            const double j_id_rev = joint_probability(rho, pbk, id, pan);
            record(t, kFactorizedJoint, std::abs(j_id_fwd - overlap * pa[un]), nk);
            record(t, kImmediateSymmetry, std::abs(overlap - immediate_conditional(bb.vector(uk), ab.vector(un))), nk);
            const double j_fwd = joint_probability(rho, pan, u, pbk);
            const double j_rev = joint_probability(rho, pbk, u, pan);
            asymmetry(t, kGenericJoint, j_fwd, j_rev, nk);
            asymmetry(t, kIdentityJoint, j_id_fwd, j_id_rev, nk);
            if (possible) {
                const double c_id = conditional_probability(rho, pan, id, pbk);
                record(t, kImmediateOverlap, std::abs(c_id - overlap), nk);
                const double c_fwd = conditional_probability(rho, pan, u, pbk);
                const double composed = trace_prob(evolve(luders_reduce(rho, pan), u), pbk);
                record(t, kCompositional, std::abs(c_fwd - composed), nk);
                if (pb[uk] > kConditioningEpsilon) {
                    const double c_id_rev = conditional_probability(rho, pbk, id, pan);
                    record(t, kConditionalSymmetryAtIdentity, std::abs(c_id - c_id_rev), nk);
                    asymmetry(t, kGenericConditional, c_fwd, conditional_probability(rho, pbk, u, pan), nk);
                }
            }
        }
        for (int k = 0; k < da; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const ComplexMatrix& pck = mc.projector(uk);
            auto nk = [&] { return fmt_detail("dim=%d rank=%d n=%d commuting k=%d", da, rank, n, k); };
            const double jf = joint_probability(rho, pan, id, pck);
            const double jr = joint_probability(rho, pck, id, pan);
            record(t, kCommutingJointSymmetry, std::abs(jf - jr), nk);
            if (immediate_conditional(ab.vector(un), cb.vector(uk)) > tolerance::kStructural) {
                record(t, kCommutingEqualPriors, std::abs(pa[un] - pc[uk]), nk);
                if (possible) {
                    const SymmetryReport sr = symmetry_report(rho, ab.vector(un), cb.vector(uk), id, tolerance::kAlgebraic);
                    WitnessSample& w = t.ws[kCommutingSymmetric];
                    if (!w.found && sr.conditional_symmetric && sr.joint_symmetric)
                        w = {true, sr.joint_forward, sr.joint_reverse, std::abs(sr.joint_forward - sr.joint_reverse), nk()};
                }
            }
        }
    }

    // Conditioning at and just above the threshold.
    {
        const ComplexMatrix a0 = ma.projector(0);
        const ComplexMatrix a1 = ma.projector(1);
        bool ok = true;
        for (double delta : {0.0, 1e-13, 1e-11}) {
            const DensityState st_delta(delta * a0 + (1.0 - delta) * a1);
            const bool should_raise = delta <= kConditioningEpsilon;
            bool raised_reduce = false, raised_cond = false;
            try {
                (void)luders_reduce(st_delta, a0);
            } catch (const ZeroProbabilityConditioning&) {
                raised_reduce = true;
            }
            try {
                (void)conditional_probability(st_delta, a0, u, mb.projector(0));
            } catch (const ZeroProbabilityConditioning&) {
                raised_cond = true;
            }
            ok = ok && raised_reduce == should_raise && raised_cond == should_raise;
        }
        record(t, kZeroConditioning, ok ? 0.0 : 1.0, [&] { return fmt_detail("dim=%d", da); });
    }
}

void behavioral_checks(TrialOutcome& t, const SeedStream& st, int da, int ds) {
    const int dd = da * ds;
    auto eng = st.child("rank").engine();
    const int rank = std::uniform_int_distribution<int>(1, dd)(eng);
    const DensityState rho = random_state(dd, rank, st.child("state").seed());
    const AlternativeBasis ab = AlternativeBasis::from_columns(random_unitary(da, st.child("basis_a").seed()), numbered("A", da));
    const AlternativeBasis bb = AlternativeBasis::from_columns(random_unitary(da, st.child("basis_b").seed()), numbered("B", da));
    std::vector<EmotionVector> ea, eb;
    for (int n = 0; n < da; ++n) {
        ea.emplace_back(random_unit(ds, st.child("emotion_a").child(static_cast<std::uint64_t>(n)).seed()));
        eb.emplace_back(random_unit(ds, st.child("emotion_b").child(static_cast<std::uint64_t>(n)).seed()));
    }
    const ProspectMeasure mp = ProspectMeasure::from_basis(ab, ea);
    const ProspectMeasure mq = ProspectMeasure::from_basis(bb, eb);
    const ComplexMatrix u = random_unitary(dd, st.child("u").seed());
    const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);

    for (const auto* m : {&mp, &mq}) {
        for (std::size_t i = 0; i < m->size(); ++i) {
            const auto d = decompose_prospect(rho, m->prospect(i));
            auto det = [&] { return fmt_detail("dims=%dx%d rank=%d prospect=%d", da, ds, rank, static_cast<int>(i)); };
            record(t, kDecomposition, std::abs(trace_prob(rho, m->projectors()[i]) - (d.rational + d.quality)), det);
            record(t, kQualityReal, std::abs(d.quality_imaginary), det);
            record(t, kQualityBounds, std::max(0.0, std::abs(d.quality) - 1.0), det);
        }
    }

    if (trace_prob(rho, mp.total_projector()) > kConditioningEpsilon) {
        const auto diag = normalization_diagnostics(project_onto_prospects(rho, mp), mp);
        auto det = [&] { return fmt_detail("dims=%dx%d rank=%d", da, ds, rank); };
        record(t, kBehavioralNormalization, std::abs(diag.sum_total - 1.0), det);
        record(t, kBehavioralSplit, diag.split_residual, det);
    }

    const auto& pp = mp.projectors();
    for (std::size_t m = 0; m < pp.size(); ++m) {
        for (std::size_t n = 0; n < pp.size(); ++n) {
            const ComplexMatrix prod = pp[m] * pp[n];
            const ComplexMatrix expect = m == n ? pp[n] : ComplexMatrix::Zero(dd, dd);
            const double r = std::max(max_abs_diff(prod, expect), max_abs_diff(prod, pp[n] * pp[m]));
            record(t, kProspectOrthogonality, r,
                   [&] { return fmt_detail("dims=%dx%d m=%d n=%d", da, ds, static_cast<int>(m), static_cast<int>(n)); });
        }
    }

    // Commuting prospects: the A family permuted, rephased, keeping each emotion with its vector.
    std::vector<int> perm(static_cast<std::size_t>(da));
    std::iota(perm.begin(), perm.end(), 0);
    auto peng = st.child("permutation").engine();
    std::shuffle(perm.begin(), perm.end(), peng);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::vector<ComplexVector> cv;
    std::vector<EmotionVector> ec;
    for (int k = 0; k < da; ++k) {
        const auto src = static_cast<std::size_t>(perm[static_cast<std::size_t>(k)]);
        cv.push_back(std::polar(1.0, phase(peng)) * ab.vector(src));
        ec.push_back(ea[src]);
    }
    const ProspectMeasure mc = ProspectMeasure::from_basis(AlternativeBasis(numbered("C", da), cv), ec);

    for (std::size_t n = 0; n < mp.size(); ++n) {
        const Prospect& a = mp.prospect(n);
        const double prior_a = trace_prob(rho, pp[n]);
        const bool possible = prior_a > kConditioningEpsilon;
        if (possible) {
            record(t, kBehavioralLudersCertainty, std::abs(trace_prob(behavioral_luders(rho, a), pp[n]) - 1.0),
                   [&] { return fmt_detail("dims=%dx%d rank=%d n=%d", da, ds, rank, static_cast<int>(n)); });
        }
        for (std::size_t k = 0; k < mq.size(); ++k) {
            const Prospect& b = mq.prospect(k);
            auto nk = [&] { return fmt_detail("dims=%dx%d n=%d k=%d", da, ds, static_cast<int>(n), static_cast<int>(k)); };
            asymmetry(t, kBehavioralIdentityJoint, behavioral_joint(rho, a, id, b), behavioral_joint(rho, b, id, a), nk);
            asymmetry(t, kBehavioralGenericJoint, behavioral_joint(rho, a, u, b), behavioral_joint(rho, b, u, a), nk);
            if (!possible) continue;
            const double c_id = behavioral_conditional(rho, a, id, b);
            record(t, kBehavioralImmediateOverlap, std::abs(c_id - prospect_overlap_probability(a, b)), nk);
            if (trace_prob(rho, mq.projectors()[k]) > kConditioningEpsilon)
                record(t, kBehavioralConditionalSymmetry, std::abs(c_id - behavioral_conditional(rho, b, id, a)), nk);
            const double composed = trace_prob(evolve(behavioral_luders(rho, a), u), mq.projectors()[k]);
            record(t, kBehavioralCompositional, std::abs(behavioral_conditional(rho, a, u, b) - composed), nk);
        }
        for (const auto* other : {&mp, &mc}) {
            for (std::size_t k = 0; k < other->size(); ++k) {
                const Prospect& b = other->prospect(k);
                record(t, kBehavioralCommutingJointSymmetry,
                       std::abs(behavioral_joint(rho, a, id, b) - behavioral_joint(rho, b, id, a)),
                       [&] { return fmt_detail("dims=%dx%d n=%d k=%d", da, ds, static_cast<int>(n), static_cast<int>(k)); });
            }
        }
        // Same alternative, a different emotion.
        const Prospect shared(n, ab.vector(n), EmotionVector(random_unit(ds, st.child("shared").child(n).seed())));
        asymmetry(t, kSharedAlternative, behavioral_joint(rho, a, id, shared), behavioral_joint(rho, shared, id, a),
                  [&] { return fmt_detail("dims=%dx%d n=%d", da, ds, static_cast<int>(n)); });
    }
}

void degeneracy_checks(TrialOutcome& t, const SeedStream& st, int da) {
    const DensityState rho = random_state(da, 1 + static_cast<int>(st.seed() % static_cast<std::uint64_t>(da)),
                                          st.child("state").seed());
    const AlternativeBasis ab = AlternativeBasis::from_columns(random_unitary(da, st.child("basis_a").seed()), numbered("A", da));
    const AlternativeBasis bb = AlternativeBasis::from_columns(random_unitary(da, st.child("basis_b").seed()), numbered("B", da));
    const std::vector<EmotionVector> trivial(static_cast<std::size_t>(da), EmotionVector::elementary(1, 0));
    const ProspectMeasure mp = ProspectMeasure::from_basis(ab, trivial);
    const ProspectMeasure mq = ProspectMeasure::from_basis(bb, trivial);
    const ProjectorMeasure ma = measure_from_basis(ab);
    const ProjectorMeasure mb = measure_from_basis(bb);
    const ComplexMatrix u = random_unitary(da, st.child("u").seed());

    for (std::size_t n = 0; n < mp.size(); ++n) {
        const Prospect& a = mp.prospect(n);
        const double p = choice_probability(rho, ma, n);
        const auto d = decompose_prospect(rho, a);
        double r = std::max({std::abs(prospect_probability(rho, a) - p), std::abs(d.rational - p), std::abs(d.quality)});
        if (p > kConditioningEpsilon)
            r = std::max(r, max_abs_diff(behavioral_luders(rho, a).matrix(), luders_reduce(rho, ma.projector(n)).matrix()));
        for (std::size_t k = 0; k < mq.size(); ++k) {
            const Prospect& b = mq.prospect(k);
            r = std::max(r, std::abs(behavioral_joint(rho, a, u, b) - joint_probability(rho, ma.projector(n), u, mb.projector(k))));
            r = std::max(r, std::abs(prospect_overlap_probability(a, b) - immediate_conditional(ab.vector(n), bb.vector(k))));
            if (p > kConditioningEpsilon)
                r = std::max(r, std::abs(behavioral_conditional(rho, a, u, b) -
                                         conditional_probability(rho, ma.projector(n), u, mb.projector(k))));
        }
        record(t, kSubjectDimOne, r, [&] { return fmt_detail("dim=%d n=%d", da, static_cast<int>(n)); });
    }
}

TrialOutcome run_trial(const SeedStream& stream, Dims dims) {
    TrialOutcome t;
    t.seed = stream.seed();
    try {
        sequential_checks(t, stream.child("sequential"), dims.da);
        behavioral_checks(t, stream.child("behavioral"), dims.da, dims.ds);
        degeneracy_checks(t, stream.child("degenerate"), dims.da);
        record(t, kTrialCompleted, 0.0, [] { return std::string(); });
    } catch (const std::exception& e) {
        record(t, kTrialCompleted, 1.0, [&] { return std::string(e.what()); });
    }
    return t;
}

}  // namespace

bool AuditReport::all_passed() const noexcept {
    return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.passed(); });
}

const IdentityResult* AuditReport::identity(std::string_view name) const {
    for (const auto& r : identities)
        if (r.name == name) return &r;
    return nullptr;
}

const Witness* AuditReport::witness(std::string_view name) const {
    for (const auto& w : witnesses)
        if (w.name == name) return &w;
    return nullptr;
}

Report AuditReport::to_report() const {
    Report r("audit");
    r.set_metadata("seed", seed);
    r.set_metadata("trials", static_cast<std::uint64_t>(trials));
    r.set_metadata("max_alternative_dim", std::int64_t{max_alternative_dim});
    r.set_metadata("max_subject_dim", std::int64_t{max_subject_dim});
    r.set_metadata("epsilon_conditioning", kConditioningEpsilon);
    for (const auto& id : identities) {
        r.add_residual("identities", id.name, id.max_residual, id.tolerance);
        r.add("identities", id.name, "checks", static_cast<std::uint64_t>(id.checks));
        if (id.counterexample) {
            const std::string sec = "counterexamples";
            r.add(sec, id.name, "trial", static_cast<std::uint64_t>(id.counterexample->trial));
            r.add(sec, id.name, "trial_seed", id.counterexample->seed);
            r.add(sec, id.name, "residual", id.counterexample->residual);
            r.add(sec, id.name, "detail", id.counterexample->detail);
        }
    }
    for (const auto& w : witnesses) {
        r.add("witnesses", w.name, "found", w.found);
        r.add("witnesses", w.name, "description", w.description);
        if (!w.found) continue;
        r.add("witnesses", w.name, "trial", static_cast<std::uint64_t>(w.trial));
        r.add("witnesses", w.name, "trial_seed", w.seed);
        r.add_probability("witnesses", w.name, "forward", std::clamp(w.forward, 0.0, 1.0));
        r.add_probability("witnesses", w.name, "reverse", std::clamp(w.reverse, 0.0, 1.0));
        r.add("witnesses", w.name, "gap", w.gap);
        r.add("witnesses", w.name, "detail", w.detail);
    }
    r.add("summary", "identities", "passed", all_passed());
    return r;
}

AuditReport run_symmetry_audit(const Scenario& s, std::size_t trials, unsigned threads) {
    if (trials == 0) throw InvariantError("audit: trials must be at least 1");
    AuditReport report;
    report.seed = s.seed;
    report.trials = trials;
    report.max_alternative_dim = std::max(2, s.ambient_dim);
    report.max_subject_dim = std::max(2, s.subject_dim());

    const SeedStream root = SeedStream(s.seed).child("audit");
    std::vector<TrialOutcome> outcomes(trials);
    detail::parallel_for(trials, threads, [&](std::size_t i) {
        outcomes[i] = run_trial(root.child(static_cast<std::uint64_t>(i)),
                                trial_dims(i, report.max_alternative_dim, report.max_subject_dim));
    });

    for (std::size_t k = 0; k < kIdentityCount; ++k) {
        IdentityResult r;
        r.name = kIdentities[k].name;
        r.tolerance = kIdentities[k].tolerance;
        for (std::size_t i = 0; i < trials; ++i) {
            const Sample& smp = outcomes[i].ids[k];
            if (!smp.checked) continue;
            r.checks += smp.checks;
            r.max_residual = std::max(r.max_residual, smp.residual);
            if (!r.counterexample && !(smp.residual < r.tolerance))
                r.counterexample = Counterexample{i, outcomes[i].seed, smp.residual, smp.detail};
        }
        report.identities.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < kWitnessCount; ++k) {
        Witness w;
        w.name = kWitnesses[k].name;
        w.description = kWitnesses[k].description;
        for (std::size_t i = 0; i < trials; ++i) {
            const WitnessSample& smp = outcomes[i].ws[k];
            if (!smp.found) continue;
            if (w.found && (kWitnesses[k].keep_first || smp.gap <= w.gap)) continue;
            w.found = true;
            w.trial = i;
            w.seed = outcomes[i].seed;
            w.forward = smp.forward;
            w.reverse = smp.reverse;
            w.gap = smp.gap;
            w.detail = smp.detail;
        }
        report.witnesses.push_back(std::move(w));
    }
    return report;
}

}  // namespace qdt

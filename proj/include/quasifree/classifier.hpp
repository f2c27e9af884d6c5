#pragma once

// Classification of crossed products by quasi-free actions from the weight data:
// simplicity, pure infiniteness, AF-embeddability, AF-ness and stable finiteness,
// with the sub-results kept as certificates.

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "semigroup.hpp"
#include "words.hpp"

namespace quasifree {

enum class Tri { yes, no, open };

inline const char* to_string(Tri t) {
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::open: return "open";
    }
    return "unknown";
}

struct ConditionReport {
    bool holds = false; // no -omega_i lies in the closed semigroup
    std::vector<semigroup::NegGenReport> per_index;
};

struct SimplicityReport {
    bool simple = false;
    std::vector<semigroup::ClosureCertificate> per_index; // closure of omega with -omega_i appended
};

/// u = S_mu chi_{0} for a word with omega_mu = 0, and the exact checks on it.
struct InfiniteProjectionWitness {
    Word mu;
    AlgebraElement chi;
    AlgebraElement u;
    bool isometry_on_chi = false;  // u* u = chi
    bool range_below_chi = false;  // chi (u u*) = u u*
    bool proper = false;           // u u* != chi
    bool passed() const { return isometry_on_chi && range_below_chi && proper; }
};

struct Verdict {
    bool infinite_alphabet = false;
    bool simple = false;
    std::optional<bool> purely_infinite;
    Tri af_embeddable = Tri::open;
    std::optional<bool> af_itself;
    Tri stably_finite = Tri::open;
    semigroup::ClosureCertificate closure;
    ConditionReport condition;
    SimplicityReport simplicity;
    std::optional<MembershipWitness> zero_word;
    std::optional<InfiniteProjectionWitness> infinite_projection;
    std::vector<std::string> notes;
};

inline ConditionReport condition_i(const semigroup::SemigroupAnalysis& analysis) {
    ConditionReport report;
    report.holds = true;
    for (std::size_t i = 0; i < analysis.omega().size(); ++i) {
        report.per_index.push_back(semigroup::neg_gen_report(analysis, i));
        if (report.per_index.back().in_closure) report.holds = false;
    }
    return report;
}

inline SimplicityReport simplicity(const GroupDescriptor& desc, const OmegaData& omega, SearchLimits limits = {}) {
    SimplicityReport report;
    report.simple = true;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        OmegaData extended = omega;
        extended.weights.push_back(gamma::negate(desc, omega.weights[i]));
        report.per_index.push_back(semigroup::closure_equals_gamma(desc, extended, limits));
        if (!report.per_index.back().verdict) report.simple = false;
    }
    return report;
}

/// Builds u = S_mu chi_{0} from a zero-sum word and verifies it exactly; nothing
/// when no zero-sum word exists.
inline std::optional<InfiniteProjectionWitness> infinite_projection_witness(const Algebra& alg,
                                                                           const semigroup::SemigroupAnalysis& analysis) {
    const auto& desc = alg.descriptor();
    if (!desc.is_discrete())
        fail(ErrorKind::feature, "classifier", "the infinite-projection witness needs a discrete group");
    auto zero = analysis.zero_word();
    if (!zero) return std::nullopt;
    InfiniteProjectionWitness w;
    w.mu = word_from_counts(zero->counts);
    w.chi = alg.function(alg.functions().indicator({gamma::zero(desc)}));
    w.u = alg.multiply(alg.S(w.mu), w.chi);
    AlgebraElement u_star = alg.adjoint(w.u);
    AlgebraElement range = alg.multiply(w.u, u_star);
    w.isometry_on_chi = alg.multiply(u_star, w.u) == w.chi;
    w.range_below_chi = alg.multiply(w.chi, range) == range;
    w.proper = !(range == w.chi);
    return w;
}

inline std::optional<InfiniteProjectionWitness> infinite_projection_witness(const GroupDescriptor& desc,
                                                                           const OmegaData& omega,
                                                                           SearchLimits limits = {}) {
    semigroup::SemigroupAnalysis analysis(desc, omega, limits);
    return infinite_projection_witness(Algebra(desc, omega), analysis);
}

inline Verdict classify(const GroupDescriptor& desc, const OmegaData& omega, SearchLimits limits = {},
                        Caps caps = {}) {
    Verdict v;
    v.infinite_alphabet = omega.infinite();
    semigroup::SemigroupAnalysis analysis(desc, omega, limits);
    v.closure = semigroup::closure_equals_gamma(analysis);
    v.condition = condition_i(analysis);
    v.zero_word = analysis.zero_word();
    const bool dense = v.closure.verdict;
    const bool cond = v.condition.holds;

    if (v.infinite_alphabet) {
        v.simple = dense;
        v.notes.push_back("infinite alphabet: simple, purely infinite and dense semigroup are equivalent");
    } else {
        v.simplicity = simplicity(desc, omega, limits);
        v.simple = v.simplicity.simple;
    }
    v.purely_infinite = dense;

    if (desc.is_discrete()) {
        v.af_embeddable = cond ? Tri::yes : Tri::no;
        v.stably_finite = cond ? Tri::yes : Tri::no;
        if (!v.infinite_alphabet) v.af_itself = cond;
        v.infinite_projection = infinite_projection_witness(Algebra(desc, omega, caps, limits.precision_depth), analysis);
        if (cond == v.infinite_projection.has_value())
            fail(ErrorKind::internal, "classifier", "condition and infinite-projection witness disagree");
        if (v.infinite_projection && !v.infinite_projection->passed())
            fail(ErrorKind::internal, "classifier", "infinite-projection witness failed verification",
                 "mu = " + v.infinite_projection->mu.str());
    } else {
        const auto& signs = v.closure.signs;
        bool pos = false, neg = false;
        for (int s : signs) {
            pos = pos || s > 0;
            neg = neg || s < 0;
        }
        if (cond) {
            v.af_embeddable = Tri::yes;
            v.stably_finite = Tri::yes;
        } else if (pos && neg) {
            v.af_embeddable = Tri::no;
            v.stably_finite = Tri::no;
            if (!dense) v.notes.push_back("weights of both signs span a rank-one lattice; zero-sum words give infinite projections");
        } else {
            v.af_embeddable = Tri::open;
            v.stably_finite = Tri::yes;
            v.notes.push_back("a zero weight with the remaining weights of one sign: AF-embeddability is open");
        }
    }

    // Consistency of the verdict with the structure theorems.
    if (*v.purely_infinite && !v.simple)
        fail(ErrorKind::internal, "classifier", "purely infinite verdict on a non-simple instance");
    if (v.af_itself.value_or(false) && v.af_embeddable != Tri::yes)
        fail(ErrorKind::internal, "classifier", "AF verdict without AF-embeddability");
    if (*v.purely_infinite && v.af_embeddable == Tri::yes)
        fail(ErrorKind::internal, "classifier", "purely infinite and AF-embeddable at once");
    if (v.simple && !v.infinite_alphabet && dense == cond)
        fail(ErrorKind::internal, "classifier", "simple instance violates the dichotomy");
    return v;
}

} // namespace quasifree

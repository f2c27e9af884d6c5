#pragma once

// Command handlers behind the CLI. Each takes a parsed spec and returns the JSON
// document to print; errors propagate as quasifree::Error.

#include <optional>
#include <string>

#include "af_builder.hpp"
#include "classifier.hpp"
#include "expression.hpp"
#include "json_io.hpp"
#include "properties.hpp"
#include "scaling.hpp"
#include "semigroup.hpp"

namespace quasifree {

inline Json cmd_classify(const ProblemSpec& spec) {
    Algebra alg = spec.algebra();
    Verdict v = classify(spec.group, spec.omega, spec.limits, spec.caps);
    Json j = json_io::to_json(alg, v);
    j["command"] = "classify";
    return j;
}

struct DecomposeOutput {
    Json report;
    std::string dot;
};

inline DecomposeOutput cmd_decompose(const ProblemSpec& spec) {
    Algebra alg = spec.algebra();
    semigroup::SemigroupAnalysis analysis(spec.group, spec.omega, spec.limits);
    RegionFamily rf = make_region_family(alg.functions(), spec.regions(alg));
    DecompositionReport r = decompose(alg, analysis, rf, spec.truncation);
    Json j = json_io::to_json(alg, r);
    j["command"] = "decompose";
    return {j, to_dot(alg, r)};
}

inline Json cmd_scaling(const ProblemSpec& spec) {
    Algebra alg = spec.algebra();
    semigroup::SemigroupAnalysis analysis(spec.group, spec.omega, spec.limits);
    ScalingReport r = scaling_element(alg, analysis, spec.elements("x_set"), spec.element("gamma0"));
    Json j = json_io::to_json(alg, r);
    j["command"] = "scaling";
    return j;
}

/// Randomized algebra laws plus a re-run of the classifier's internal consistency checks.
inline Json cmd_verify(const ProblemSpec& spec, std::size_t samples = 100) {
    Algebra alg = spec.algebra();
    const std::uint64_t seed = spec.seed.value_or(1);
    Json j;
    j["command"] = "verify";
    j["seed"] = seed;
    j["samples"] = samples;
    j["properties"] = Json::array();
    bool all = true;
    for (const auto& r : run_property_suite(alg, seed, samples)) {
        Json e{{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}, {"passed", r.passed()}};
        if (!r.passed()) e["first_failure"] = r.first_failure;
        all = all && r.passed();
        j["properties"].push_back(std::move(e));
    }
    // classify() throws on any violated structural invariant.
    Verdict v = classify(spec.group, spec.omega, spec.limits, spec.caps);
    j["classifier_invariants"] = true;
    j["simple"] = v.simple;
    j["passed"] = all;
    return j;
}

inline Json cmd_eval(const ProblemSpec& spec, const std::string& text) {
    Algebra alg = spec.algebra();
    AlgebraElement x = parse_expression(alg, text);
    Json j;
    j["command"] = "eval";
    j["input"] = text;
    j["result"] = render(alg, x);
    j["terms"] = x.size();
    j["is_projection"] = alg.is_projection(x);
    j["is_partial_isometry"] = alg.is_partial_isometry(x);
    return j;
}

} // namespace quasifree

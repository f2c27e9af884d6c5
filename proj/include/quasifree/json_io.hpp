#pragma once

// JSON problem specs and certificate serialization. Rationals are written as
// canonical strings ("3/4"); keys come out sorted, so identical inputs give
// byte-identical output.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "af_builder.hpp"
#include "algebra.hpp"
#include "classifier.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "gamma.hpp"
#include "scaling.hpp"
#include "semigroup.hpp"

namespace quasifree {

using Json = nlohmann::json;

namespace json_io {

[[noreturn]] inline void bad_spec(const std::string& message, const std::string& query = {}) {
    fail(ErrorKind::argument, "cli_frontend", message, query);
}

inline Rational rational_from(const Json& j, const char* what) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad_spec(std::string(what) + " must be an integer or a rational string", j.dump());
}

inline GroupDescriptor descriptor_from(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) bad_spec("group descriptor needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "discrete") {
        std::size_t rank = j.value("free_rank", 0);
        std::vector<Integer> torsion;
        if (j.contains("torsion"))
            for (const auto& m : j.at("torsion")) torsion.push_back(rational_from(m, "torsion modulus").get_num());
        return GroupDescriptor::discrete(rank, std::move(torsion));
    }
    if (kind == "real_line") {
        std::vector<BasisElement> basis;
        for (const auto& b : j.at("basis")) {
            BasisElement e;
            e.name = b.at("name").get<std::string>();
            e.lo = rational_from(b.at("lo"), "basis lo");
            e.hi = rational_from(b.at("hi"), "basis hi");
            if (b.contains("polynomial"))
                for (const auto& c : b.at("polynomial")) e.polynomial.push_back(rational_from(c, "polynomial coefficient"));
            basis.push_back(std::move(e));
        }
        return GroupDescriptor::real_line(std::move(basis));
    }
    bad_spec("unknown group kind '" + kind + "'");
}

inline Json to_json(const GroupDescriptor& d) {
    Json j;
    if (d.is_discrete()) {
        j["kind"] = "discrete";
        j["free_rank"] = d.free_rank();
        j["torsion"] = Json::array();
        for (const auto& m : d.torsion()) j["torsion"].push_back(to_int64(m));
    } else {
        j["kind"] = "real_line";
        j["basis"] = Json::array();
        for (const auto& b : d.basis()) {
            Json e{{"name", b.name}, {"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}};
            if (!b.polynomial.empty()) {
                e["polynomial"] = Json::array();
                for (const auto& c : b.polynomial) e["polynomial"].push_back(to_string(c));
            }
            j["basis"].push_back(std::move(e));
        }
    }
    return j;
}

/// Arrays of integers / rational strings; a bare scalar is accepted for one-coordinate groups.
inline GroupElement element_from(const GroupDescriptor& desc, const Json& j) {
    GroupElement g;
    if (j.is_array()) {
        for (const auto& c : j) g.coords.push_back(rational_from(c, "coordinate"));
    } else {
        g.coords.push_back(rational_from(j, "coordinate"));
    }
    return gamma::normalize(desc, std::move(g));
}

inline Json to_json(const GroupDescriptor& desc, const GroupElement& g) {
    Json j = Json::array();
    for (const auto& c : g.coords) {
        if (desc.is_discrete())
            j.push_back(to_int64(c.get_num()));
        else
            j.push_back(to_string(c));
    }
    return j;
}

inline Json to_json(const Counts& c) {
    Json j = Json::array();
    for (auto v : c) j.push_back(v);
    return j;
}

inline Json to_json(const GroupDescriptor& desc, const semigroup::ClosureCertificate& c) {
    Json j{{"verdict", c.verdict}, {"reason", semigroup::to_string(c.reason)}};
    if (desc.is_discrete()) {
        j["generates_group"] = c.generates_group;
        j["invertible"] = c.invertible;
        if (desc.is_finite()) {
            j["closure_set"] = Json::array();
            for (const auto& g : c.closure_set) j["closure_set"].push_back(to_json(desc, g));
        }
    } else {
        j["signs"] = c.signs;
        j["rational_rank"] = c.rational_rank;
    }
    j["counterexample"] = c.counterexample ? to_json(desc, *c.counterexample) : Json(nullptr);
    return j;
}

} // namespace json_io

/// Parsed problem spec with command parameters; CLI flags override fields.
struct ProblemSpec {
    GroupDescriptor group;
    OmegaData omega;
    Caps caps;
    SearchLimits limits;
    Json raw;
    std::optional<std::size_t> truncation;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> expression;

    static ProblemSpec from_json(const Json& j) {
        using namespace json_io;
        ProblemSpec s;
        s.raw = j;
        if (!j.is_object()) bad_spec("spec must be a JSON object");
        if (!j.contains("group")) bad_spec("spec needs a group");
        if (!j.contains("omega")) bad_spec("spec needs omega");
        s.group = descriptor_from(j.at("group"));
        AlphabetMode mode = AlphabetMode::finite;
        if (j.contains("algebra")) {
            const auto& a = j.at("algebra");
            std::string kind = a.is_string() ? a.get<std::string>() : a.at("kind").get<std::string>();
            if (kind == "O_infinity")
                mode = AlphabetMode::infinite_repeating;
            else if (kind != "O_n")
                bad_spec("algebra kind must be O_n or O_infinity", kind);
            if (a.is_object() && a.contains("n") && a.at("n").get<std::size_t>() != j.at("omega").size())
                bad_spec("algebra n does not match the number of weights");
        }
        std::vector<GroupElement> weights;
        for (const auto& w : j.at("omega")) weights.push_back(element_from(s.group, w));
        s.omega = make_omega(s.group, std::move(weights), mode);
        if (j.contains("caps")) {
            const auto& c = j.at("caps");
            s.caps.max_terms = c.value("max_terms", s.caps.max_terms);
            s.caps.max_nodes = c.value("max_nodes", s.caps.max_nodes);
            s.limits.max_states = c.value("max_states", s.limits.max_states);
        }
        s.limits.precision_depth = j.value("precision_depth", s.limits.precision_depth);
        if (j.contains("truncation")) s.truncation = j.at("truncation").get<std::size_t>();
        if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("expression")) s.expression = j.at("expression").get<std::string>();
        return s;
    }

    Algebra algebra() const { return Algebra(group, omega, caps, limits.precision_depth); }

    std::vector<GroupElement> elements(const char* key) const {
        std::vector<GroupElement> out;
        if (!raw.contains(key)) json_io::bad_spec(std::string("spec needs ") + key);
        for (const auto& e : raw.at(key)) out.push_back(json_io::element_from(group, e));
        return out;
    }

    GroupElement element(const char* key) const {
        if (!raw.contains(key)) json_io::bad_spec(std::string("spec needs ") + key);
        return json_io::element_from(group, raw.at(key));
    }

    /// Regions as expression strings ("chi{0,1}", "chi[0,sqrt2)"), point lists, or [lo, hi] pairs.
    std::vector<FiniteFunction> regions(const Algebra& alg) const {
        if (!raw.contains("regions")) json_io::bad_spec("spec needs regions");
        std::vector<FiniteFunction> out;
        for (const auto& r : raw.at("regions")) {
            if (r.is_string()) {
                auto f = alg.as_function(parse_expression(alg, r.get<std::string>()));
                if (!f) json_io::bad_spec("region expression is not a function", r.get<std::string>());
                out.push_back(*f);
            } else if (r.is_object() && r.contains("interval")) {
                const auto& iv = r.at("interval");
                out.push_back(alg.functions().interval(json_io::element_from(group, iv.at(0)),
                                                       json_io::element_from(group, iv.at(1))));
            } else if (r.is_object() && r.contains("points")) {
                std::vector<GroupElement> pts;
                for (const auto& p : r.at("points")) pts.push_back(json_io::element_from(group, p));
                out.push_back(alg.functions().indicator(pts));
            } else if (r.is_array()) {
                std::vector<GroupElement> pts;
                for (const auto& p : r) pts.push_back(json_io::element_from(group, p));
                out.push_back(alg.functions().indicator(pts));
            } else {
                json_io::bad_spec("unrecognized region", r.dump());
            }
        }
        return out;
    }
};

namespace json_io {

inline Json to_json(const Algebra& alg, const Verdict& v) {
    const auto& desc = alg.descriptor();
    Json j;
    j["simple"] = v.simple;
    j["purely_infinite"] = v.purely_infinite ? Json(*v.purely_infinite) : Json(nullptr);
    j["af_embeddable"] = to_string(v.af_embeddable);
    j["af_itself"] = v.af_itself ? Json(*v.af_itself) : Json(nullptr);
    j["stably_finite"] = to_string(v.stably_finite);
    j["algebra"] = v.infinite_alphabet ? "O_infinity" : "O_n";
    Json cert;
    cert["closure"] = to_json(desc, v.closure);
    Json cond{{"holds", v.condition.holds}, {"per_index", Json::array()}};
    for (std::size_t i = 0; i < v.condition.per_index.size(); ++i) {
        const auto& r = v.condition.per_index[i];
        cond["per_index"].push_back({{"index", i + 1},
                                     {"neg_generator_in_closure", r.in_closure},
                                     {"reason", r.reason},
                                     {"witness", r.witness ? to_json(r.witness->counts) : Json(nullptr)}});
    }
    cert["condition"] = cond;
    Json simp{{"simple", v.simplicity.simple}, {"per_index", Json::array()}};
    for (const auto& c : v.simplicity.per_index) simp["per_index"].push_back(to_json(desc, c));
    cert["simplicity"] = simp;
    cert["zero_word"] = v.zero_word ? to_json(v.zero_word->counts) : Json(nullptr);
    if (v.infinite_projection) {
        const auto& w = *v.infinite_projection;
        cert["infinite_projection"] = {{"mu", w.mu.str()},
                                       {"u", render(alg, w.u)},
                                       {"chi", render(alg, w.chi)},
                                       {"u*u = chi", w.isometry_on_chi},
                                       {"chi uu* = uu*", w.range_below_chi},
                                       {"uu* != chi", w.proper}};
    } else {
        cert["infinite_projection"] = nullptr;
    }
    j["certificates"] = cert;
    j["notes"] = v.notes;
    return j;
}

inline Json to_json(const Algebra& alg, const DecompositionReport& r) {
    Json j;
    j["K"] = r.K;
    j["truncation"] = r.truncation;
    j["words"] = Json::array();
    for (const auto& w : r.words) j["words"].push_back(w.str());
    j["atoms"] = Json::array();
    for (const auto& a : r.family.atoms) j["atoms"].push_back(render(alg, alg.function(a)));
    j["p"] = render(alg, r.p);
    j["q"] = render(alg, r.q);
    j["summand_count"] = r.summands.size();
    j["summands"] = Json::array();
    for (const auto& s : r.summands) j["summands"].push_back({{"tau", s.tau}, {"q_tau", render(alg, s.q_tau)}});
    j["checks"] = Json::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"count", c.count}, {"passed", c.passed}});
    j["passed"] = r.passed();
    return j;
}

inline Json to_json(const Algebra& alg, const ScalingReport& r) {
    const auto& desc = alg.descriptor();
    Json j;
    j["X"] = Json::array();
    for (const auto& g : r.partition.X) j["X"].push_back(to_json(desc, g));
    j["gamma0"] = to_json(desc, r.partition.gamma0);
    j["pairs"] = Json::array();
    for (const auto& p : r.partition.pairs)
        j["pairs"].push_back({{"point", to_json(desc, p.point)}, {"f", render(alg, alg.function(p.f))}, {"mu", p.mu.str()}});
    j["partition_checks"] = {{"pairwise orthogonal words", r.partition.orthogonal_words},
                             {"sum f_k = 1 on X", r.partition.unit_on_X},
                             {"sum f_k(gamma0) not in {0,1}", r.partition.fractional_at_gamma0},
                             {"supports shifted into X", r.partition.supports_in_X}};
    j["x"] = render(alg, r.x);
    j["x*x"] = render(alg, r.x_star_x);
    j["xx*"] = render(alg, r.x_x_star);
    j["scaling_checks"] = {{"x*x = sum f_k", r.x_star_x_is_sum},
                           {"(x*x)(xx*) = xx*", r.absorbs},
                           {"x*x != xx*", r.not_normal}};
    j["passed"] = r.passed();
    return j;
}

} // namespace json_io
} // namespace quasifree

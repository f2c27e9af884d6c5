#pragma once

// Finite-dimensional decomposition of the subalgebra generated by
// S_mu chi_U S_nu* for a finite region family: shift bound K, the projection
// q = prod_k (1 - rho_k(p)) p, the nonzero q_tau, and exact verification of the
// orthogonality, covering and matrix-unit identities.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "classifier.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "function.hpp"
#include "gamma.hpp"
#include "semigroup.hpp"
#include "words.hpp"

namespace quasifree {

/// Base regions (0/1-valued functions) and the minimal projections of the
/// finite algebra they generate.
struct RegionFamily {
    std::vector<FiniteFunction> regions;
    std::vector<FiniteFunction> atoms; // p_1..p_L, pairwise disjoint
    FiniteFunction unit;               // p = sum of atoms
};

inline RegionFamily make_region_family(const FunctionSpace& fs, std::vector<FiniteFunction> regions) {
    RegionFamily rf;
    const auto& desc = fs.descriptor();
    for (const auto& r : regions) {
        if (!fs.all_values(r, [](const Scalar& v) { return v == Scalar(0) || v == Scalar(1); }) ||
            !r.background().is_zero())
            fail(ErrorKind::argument, "af_builder", "regions must be finite 0/1 indicators");
    }
    using Signature = std::vector<bool>;
    std::vector<std::pair<Signature, FiniteFunction>> classes;
    auto add_to_class = [&](const Signature& sig, const FiniteFunction& piece) {
        for (auto& [s, f] : classes)
            if (s == sig) {
                f = fs.add(f, piece);
                return;
            }
        classes.emplace_back(sig, piece);
    };
    if (desc.is_discrete()) {
        std::map<GroupElement, bool> points;
        for (const auto& r : regions)
            for (const auto& g : fs.support_points(r)) points[g] = true;
        for (const auto& [g, _] : points) {
            Signature sig;
            for (const auto& r : regions) sig.push_back(!fs.evaluate(r, g).is_zero());
            add_to_class(sig, fs.indicator({g}));
        }
    } else {
        std::vector<const FiniteFunction*> ptrs;
        for (const auto& r : regions) ptrs.push_back(&r);
        auto pts = fs.breakpoints(ptrs);
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            Signature sig;
            bool any = false;
            for (const auto& r : regions) {
                bool in = !fs.evaluate(r, pts[k]).is_zero();
                sig.push_back(in);
                any = any || in;
            }
            if (any) add_to_class(sig, fs.interval(pts[k], pts[k + 1]));
        }
    }
    if (classes.empty()) fail(ErrorKind::argument, "af_builder", "the region family is empty");
    rf.regions = std::move(regions);
    rf.unit = fs.zero();
    for (auto& [sig, f] : classes) {
        rf.unit = fs.add(rf.unit, f);
        rf.atoms.push_back(std::move(f));
    }
    return rf;
}

struct CheckEntry {
    std::string name;
    std::size_t count = 0;
    bool passed = true;
};

struct Summand {
    std::vector<std::size_t> tau; // tau(mu) for mu in the word list, 0 = complement of p
    AlgebraElement q_tau;
};

struct DecompositionReport {
    std::size_t K = 0;
    std::size_t truncation = 0;
    std::vector<Word> words;
    RegionFamily family;
    AlgebraElement p;
    AlgebraElement q;
    std::vector<Summand> summands;
    std::vector<CheckEntry> checks;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Least K such that no word longer than K has weight in F - F (F the union of the regions).
inline std::size_t shift_bound(const Algebra& alg, const semigroup::SemigroupAnalysis& analysis,
                               const RegionFamily& rf) {
    const auto& desc = alg.descriptor();
    const auto& omega = alg.omega();
    const auto& fs = alg.functions();
    auto cond = condition_i(analysis);
    if (!cond.holds) {
        std::string witness;
        if (auto z = analysis.zero_word()) witness = "zero-sum word " + word_from_counts(z->counts).str();
        for (std::size_t i = 0; i < cond.per_index.size() && witness.empty(); ++i)
            if (cond.per_index[i].in_closure) witness = "-omega_" + std::to_string(i + 1) + " in the closure";
        fail(ErrorKind::construction, "af_builder", "no shift bound exists: some -omega_i lies in the closure",
             witness);
    }
    std::size_t K = 0;
    if (desc.is_discrete()) {
        std::vector<GroupElement> diffs;
        auto pts = fs.support_points(rf.unit);
        for (const auto& a : pts)
            for (const auto& b : pts) diffs.push_back(gamma::sub(desc, a, b));
        std::sort(diffs.begin(), diffs.end());
        diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
        Rational budget = 0;
        for (const auto& d : diffs) {
            auto phi = analysis.potential(d);
            if (phi && *phi > budget) budget = *phi;
        }
        // Layered reachability: prefixes of a qualifying word have potential <= budget.
        std::vector<GroupElement> level{gamma::zero(desc)};
        std::size_t visited = 0;
        for (std::size_t t = 1; Rational(static_cast<unsigned long>(t)) <= budget; ++t) {
            std::map<GroupElement, bool> next;
            for (const auto& g : level)
                for (const auto& w : omega.weights) {
                    GroupElement h = gamma::add(desc, g, w);
                    auto phi = analysis.potential(h);
                    if (phi && *phi <= budget) next.emplace(std::move(h), true);
                }
            level.clear();
            for (auto& [g, _] : next) {
                if (std::binary_search(diffs.begin(), diffs.end(), g)) K = t;
                level.push_back(g);
            }
            visited += level.size();
            if (visited > alg.caps().max_nodes)
                fail(ErrorKind::resource, "af_builder", "shift-bound search exceeds the node cap");
            if (level.empty()) break;
        }
        return K;
    }
    // Real line: every weight has the same nonzero sign; F - F is a union of open intervals.
    const unsigned depth = analysis.limits().precision_depth;
    const int sign = gamma::real_sign(desc, omega.weights[0], depth);
    std::vector<GroupElement> steps;
    for (const auto& w : omega.weights) steps.push_back(sign > 0 ? w : gamma::negate(desc, w));
    std::vector<std::pair<GroupElement, GroupElement>> windows;
    for (const auto& x : rf.unit.pieces())
        for (const auto& y : rf.unit.pieces()) {
            GroupElement lo = gamma::sub(desc, y.lo, x.hi), hi = gamma::sub(desc, y.hi, x.lo);
            if (sign < 0) {
                GroupElement t = gamma::negate(desc, hi);
                hi = gamma::negate(desc, lo);
                lo = std::move(t);
            }
            windows.emplace_back(std::move(lo), std::move(hi));
        }
    GroupElement top = gamma::zero(desc);
    for (const auto& [lo, hi] : windows)
        if (gamma::compare_real(desc, hi, top, depth) == gamma::Order::greater) top = hi;
    auto inside = [&](const GroupElement& g) {
        for (const auto& [lo, hi] : windows)
            if (gamma::compare_real(desc, lo, g, depth) == gamma::Order::less &&
                gamma::compare_real(desc, g, hi, depth) == gamma::Order::less)
                return true;
        return false;
    };
    std::size_t nodes = 0;
    std::function<void(const GroupElement&, std::size_t, std::size_t)> dfs = [&](const GroupElement& g,
                                                                                  std::size_t first,
                                                                                  std::size_t len) {
        if (++nodes > alg.caps().max_nodes)
            fail(ErrorKind::resource, "af_builder", "shift-bound search exceeds the node cap");
        if (len > 0 && inside(g)) K = std::max(K, len);
        for (std::size_t i = first; i < steps.size(); ++i) {
            GroupElement h = gamma::add(desc, g, steps[i]);
            if (gamma::compare_real(desc, h, top, depth) == gamma::Order::less) dfs(h, i, len + 1);
        }
    };
    dfs(gamma::zero(desc), 0, 0);
    return K;
}

namespace detail {

inline void record(DecompositionReport& r, const std::string& name, std::size_t count, bool passed,
                   const std::string& offending = {}) {
    r.checks.push_back(CheckEntry{name, count, passed});
    if (!passed) fail(ErrorKind::internal, "af_builder", "identity failed: " + name, offending);
}

} // namespace detail

/// q = (prod_{k=1}^K (1 - rho_k(p))) p.
inline AlgebraElement build_q(const Algebra& alg, const AlgebraElement& p, std::size_t K) {
    AlgebraElement y = p;
    for (std::size_t k = 1; k <= K; ++k) y = alg.sub(y, alg.multiply(alg.rho(p, k), y));
    return y;
}

/// The nonzero q_tau = q prod_{mu in W} S_mu* p_{tau(mu)} S_mu, by depth-first
/// extension of tau with pruning on zero partial products.
inline std::vector<Summand> survivors(const Algebra& alg, const RegionFamily& rf, const std::vector<Word>& words,
                                      const AlgebraElement& q) {
    const auto& fs = alg.functions();
    const FiniteFunction one = fs.constant(Scalar(1));
    // factors[m][l] = sigma_{omega_mu}(p_l), with p_0 = 1 - p.
    std::vector<std::vector<AlgebraElement>> factors;
    for (const auto& mu : words) {
        GroupElement w = alg.weight(mu);
        std::vector<AlgebraElement> row;
        row.push_back(alg.function(fs.sub(one, fs.shift(rf.unit, w))));
        for (const auto& atom : rf.atoms) row.push_back(alg.function(fs.shift(atom, w)));
        factors.push_back(std::move(row));
    }
    std::vector<Summand> out;
    std::vector<std::size_t> tau;
    std::size_t nodes = 0;
    std::function<void(const AlgebraElement&)> extend = [&](const AlgebraElement& partial) {
        if (++nodes > alg.caps().max_nodes)
            fail(ErrorKind::resource, "af_builder", "tau enumeration exceeds the node cap");
        const std::size_t m = tau.size();
        if (m == words.size()) {
            out.push_back(Summand{tau, partial});
            return;
        }
        for (std::size_t l = 0; l < factors[m].size(); ++l) {
            AlgebraElement next = alg.multiply(partial, factors[m][l]);
            if (next.is_zero()) continue;
            tau.push_back(l);
            extend(next);
            tau.pop_back();
        }
    };
    if (!q.is_zero()) extend(q);
    return out;
}

/// Builds every artifact and runs the exact verification suite up to word length T.
inline DecompositionReport decompose(const Algebra& alg, const semigroup::SemigroupAnalysis& analysis,
                                     const RegionFamily& rf, std::optional<std::size_t> truncation = std::nullopt) {
    DecompositionReport r;
    r.family = rf;
    r.K = shift_bound(alg, analysis, rf);
    r.truncation = truncation.value_or(r.K + 1);
    if (r.truncation < r.K)
        fail(ErrorKind::argument, "af_builder", "truncation must be at least the shift bound",
             "T=" + std::to_string(r.truncation) + " K=" + std::to_string(r.K));
    const std::size_t n = alg.alphabet();
    r.words = enumerate_words(n, r.K, alg.caps().max_terms);
    r.p = alg.function(rf.unit);
    const AlgebraElement one = alg.identity();
    const AlgebraElement p0 = alg.sub(one, r.p);

    r.q = build_q(alg, r.p, r.K);
    detail::record(r, "q is a projection", 1, alg.is_projection(r.q));
    detail::record(r, "q p = q", 1, alg.multiply(r.q, r.p) == r.q);
    {
        bool ok = true;
        for (std::size_t k = 1; k <= r.K && ok; ++k) ok = alg.multiply(r.q, alg.rho(r.p, k)).is_zero();
        detail::record(r, "q rho_k(p) = 0 for 1 <= k <= K", r.K, ok);
    }

    // Orthogonality of q against its own translates, and the shift bound itself.
    auto long_words = enumerate_words(n, r.truncation, alg.caps().max_terms);
    {
        std::size_t count = 0;
        for (const auto& mu : long_words) {
            if (mu.empty() || mu.size() > r.K) continue;
            ++count;
            auto v = alg.product({r.q, alg.S(mu), r.q});
            if (!v.is_zero()) detail::record(r, "q S_mu q = 0", count, false, "mu = " + mu.str());
        }
        detail::record(r, "q S_mu q = 0 for 1 <= |mu| <= K", count, true);
        count = 0;
        for (const auto& mu : long_words) {
            if (mu.size() <= r.K) continue;
            ++count;
            auto v = alg.product({r.p, alg.S(mu), r.p});
            if (!v.is_zero()) detail::record(r, "p S_mu p = 0", count, false, "mu = " + mu.str());
        }
        detail::record(r, "p S_mu p = 0 for K < |mu| <= T", count, true);
    }
    {
        AlgebraElement acc = alg.zero();
        for (const auto& mu : r.words) acc = alg.add(acc, alg.product({alg.S(mu), r.q, alg.S_star(mu)}));
        detail::record(r, "sum_{mu in W} S_mu q S_mu* p = p", 1, alg.multiply(acc, r.p) == r.p);
    }

    r.summands = survivors(alg, rf, r.words, r.q);
    {
        AlgebraElement sum = alg.zero();
        bool projections = true, orthogonal = true;
        for (std::size_t a = 0; a < r.summands.size(); ++a) {
            sum = alg.add(sum, r.summands[a].q_tau);
            projections = projections && alg.is_projection(r.summands[a].q_tau);
            for (std::size_t b = a + 1; b < r.summands.size(); ++b)
                orthogonal = orthogonal && alg.multiply(r.summands[a].q_tau, r.summands[b].q_tau).is_zero();
        }
        detail::record(r, "each q_tau is a projection", r.summands.size(), projections);
        detail::record(r, "q_tau pairwise orthogonal", r.summands.size() * (r.summands.size() - 1) / 2, orthogonal);
        detail::record(r, "sum_tau q_tau = q", 1, sum == r.q);
    }
    {
        std::vector<AlgebraElement> atoms{p0};
        for (const auto& a : rf.atoms) atoms.push_back(alg.function(a));
        std::size_t count = 0;
        for (const auto& s : r.summands)
            for (std::size_t m = 0; m < r.words.size(); ++m) {
                auto conj = alg.product({alg.S(r.words[m]), s.q_tau, alg.S_star(r.words[m])});
                for (std::size_t l = 0; l < atoms.size(); ++l) {
                    ++count;
                    auto lhs = alg.multiply(conj, atoms[l]);
                    bool ok = (s.tau[m] == l) ? lhs == conj : lhs.is_zero();
                    if (!ok)
                        detail::record(r, "S_mu q_tau S_mu* p_l = delta S_mu q_tau S_mu*", count, false,
                                       "mu = " + r.words[m].str() + ", l = " + std::to_string(l));
                }
            }
        detail::record(r, "S_mu q_tau S_mu* p_l = delta(tau(mu), l) S_mu q_tau S_mu*", count, true);
    }
    {
        // (S_mu1 q_t1 S_nu1*)(S_mu2 q_t2 S_nu2*) = delta delta S_mu1 q_t1 S_nu2* reduces to
        // q_t1 S_nu1* S_mu2 q_t2 = delta(nu1, mu2) delta(t1, t2) q_t1.
        std::size_t count = 0;
        std::vector<AlgebraElement> left, right;
        for (const auto& w : long_words) {
            left.push_back(alg.S_star(w));
            right.push_back(alg.S(w));
        }
        for (std::size_t a = 0; a < r.summands.size(); ++a)
            for (std::size_t b = 0; b < r.summands.size(); ++b)
                for (std::size_t x = 0; x < long_words.size(); ++x) {
                    auto qa = alg.multiply(r.summands[a].q_tau, left[x]);
                    for (std::size_t y = 0; y < long_words.size(); ++y) {
                        ++count;
                        auto v = alg.multiply(alg.multiply(qa, right[y]), r.summands[b].q_tau);
                        bool expect = a == b && x == y;
                        bool ok = expect ? v == r.summands[a].q_tau : v.is_zero();
                        if (!ok)
                            detail::record(r, "matrix-unit relation", count, false,
                                           "nu1 = " + long_words[x].str() + ", mu2 = " + long_words[y].str());
                    }
                }
        detail::record(r, "matrix-unit relation up to length T", count, true);
    }
    {
        bool ok = true;
        std::size_t count = 0;
        for (std::size_t l = 1; l <= rf.atoms.size(); ++l) {
            AlgebraElement acc = alg.zero();
            for (const auto& s : r.summands)
                for (std::size_t m = 0; m < r.words.size(); ++m)
                    if (s.tau[m] == l) acc = alg.add(acc, alg.product({alg.S(r.words[m]), s.q_tau, alg.S_star(r.words[m])}));
            ++count;
            if (!(acc == alg.function(rf.atoms[l - 1]))) ok = false;
        }
        detail::record(r, "p_l = sum_{tau(mu) = l} S_mu q_tau S_mu*", count, ok);
    }
    return r;
}

inline std::string to_dot(const Algebra& alg, const DecompositionReport& r) {
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        return out;
    };
    std::string dot = "digraph decomposition {\n  node [shape=box];\n";
    for (std::size_t a = 0; a < r.summands.size(); ++a) {
        std::string tau = "(";
        for (std::size_t m = 0; m < r.summands[a].tau.size(); ++m) tau += (m ? "," : "") + std::to_string(r.summands[a].tau[m]);
        tau += ")";
        dot += "  tau" + std::to_string(a + 1) + " [label=\"tau=" + tau + "\\n" +
               escape(render(alg, r.summands[a].q_tau)) + "\"];\n";
    }
    return dot + "}\n";
}

} // namespace quasifree

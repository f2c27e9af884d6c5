#pragma once

// Exact arithmetic in the dense *-subalgebra spanned by S_mu f S_nu*.
//
// Canonical form. Over a finite alphabet the relation sum_i S_i S_i* = 1 gives
//   S_mu f S_nu* = sum_i S_{mu i} sigma_{omega_i}(f) S_{nu i}*,
// so (mu, nu)-keyed sums are not unique as written. Within each gauge degree
// |mu| - |nu| every term is expanded to the largest |nu| present, where the
// representation is unique, and then complete sibling families are contracted
// back bottom-up. The result is the unique maximally contracted form, so
// equality of elements is equality of term maps. Over the infinite-repetition
// alphabet there is no sum relation and written forms are already unique.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "function.hpp"
#include "gamma.hpp"
#include "words.hpp"

namespace quasifree {

struct Caps {
    std::size_t max_terms = 1'000'000;
    std::size_t max_nodes = 1'000'000;
};

using TermKey = std::pair<Word, Word>;
using TermMap = std::map<TermKey, FiniteFunction>;

/// Canonical finite sum of S_mu f S_nu*.
class AlgebraElement {
public:
    AlgebraElement() = default;
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

private:
    friend class Algebra;
    explicit AlgebraElement(TermMap t) : terms_(std::move(t)) {}
    TermMap terms_;
};

/// Constant-coefficient word sum such as u = sum_mu S_mu S_1^k S_2 S_mu*.
struct MultiplierWordSum {
    std::map<TermKey, Scalar> coefficients;
};

/// Read-only context (group, weights, caps) with the algebra operations.
class Algebra {
public:
    Algebra(GroupDescriptor desc, OmegaData omega, Caps caps = {}, unsigned depth = default_precision_depth)
        : omega_(std::move(omega)), caps_(caps), fs_(std::move(desc), depth) {
        for (const auto& w : omega_.weights) gamma::check_arity(fs_.descriptor(), w, "weight");
    }

    const GroupDescriptor& descriptor() const { return fs_.descriptor(); }
    const OmegaData& omega() const { return omega_; }
    const FunctionSpace& functions() const { return fs_; }
    const Caps& caps() const { return caps_; }
    std::size_t alphabet() const { return omega_.size(); }
    bool infinite() const { return omega_.infinite(); }

    GroupElement weight(const Word& w) const { return omega_of(w, descriptor(), omega_); }

    AlgebraElement zero() const { return {}; }

    AlgebraElement term(const Word& mu, const FiniteFunction& f, const Word& nu) const {
        TermMap raw;
        accumulate(raw, {mu, nu}, f);
        return canonicalize(std::move(raw));
    }

    AlgebraElement function(const FiniteFunction& f) const { return term({}, f, {}); }
    AlgebraElement scalar(const Scalar& c) const { return function(fs_.constant(c)); }
    AlgebraElement identity() const { return scalar(Scalar(1)); }
    /// S_mu as a multiplier-level element (function slot 1).
    AlgebraElement S(const Word& mu) const { return term(mu, fs_.constant(Scalar(1)), {}); }
    AlgebraElement S_star(const Word& mu) const { return term({}, fs_.constant(Scalar(1)), mu); }

    AlgebraElement from_terms(const std::vector<std::tuple<Word, FiniteFunction, Word>>& terms) const {
        TermMap raw;
        for (const auto& [mu, f, nu] : terms) accumulate(raw, {mu, nu}, f);
        return canonicalize(std::move(raw));
    }

    AlgebraElement from_multiplier(const MultiplierWordSum& u) const {
        TermMap raw;
        for (const auto& [key, c] : u.coefficients) accumulate(raw, key, fs_.constant(c));
        return canonicalize(std::move(raw));
    }

    AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) const {
        TermMap raw = x.terms_;
        for (const auto& [k, f] : y.terms_) accumulate(raw, k, f);
        return canonicalize(std::move(raw));
    }

    AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) const {
        return add(x, scale(y, Scalar(-1)));
    }

    AlgebraElement scale(const AlgebraElement& x, const Scalar& c) const {
        if (c.is_zero()) return {};
        TermMap raw;
        for (const auto& [k, f] : x.terms_) raw.emplace(k, fs_.scale(f, c));
        return AlgebraElement(std::move(raw));
    }

    /// (S_mu f S_nu*)(S_a g S_b*) = S_{mu r} sigma_{omega_r}(f) g S_b* if a = nu r,
    /// S_mu f sigma_{omega_r}(g) S_{b r}* if nu = a r, and 0 otherwise.
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const {
        TermMap raw;
        std::size_t produced = 0;
        for (const auto& [kx, f] : x.terms_)
            for (const auto& [ky, g] : y.terms_) {
                const auto& [mu, nu] = kx;
                const auto& [a, b] = ky;
                auto rel = prefix_relation(nu, a);
                if (const auto* l = std::get_if<LeftDivides>(&rel)) {
                    auto h = fs_.multiply(fs_.shift(f, weight(l->remainder)), g);
                    if (!h.is_zero()) accumulate(raw, {mu + l->remainder, b}, h);
                } else if (const auto* r = std::get_if<RightDivides>(&rel)) {
                    auto h = fs_.multiply(f, fs_.shift(g, weight(r->remainder)));
                    if (!h.is_zero()) accumulate(raw, {mu, b + r->remainder}, h);
                }
                if (++produced > caps_.max_terms)
                    fail(ErrorKind::resource, "star_algebra", "product exceeds the term cap",
                         std::to_string(x.size()) + " x " + std::to_string(y.size()) + " terms");
            }
        return canonicalize(std::move(raw));
    }

    AlgebraElement product(const std::vector<AlgebraElement>& factors) const {
        if (factors.empty()) return identity();
        AlgebraElement acc = factors.front();
        for (std::size_t i = 1; i < factors.size(); ++i) acc = multiply(acc, factors[i]);
        return acc;
    }

    AlgebraElement adjoint(const AlgebraElement& x) const {
        TermMap raw;
        for (const auto& [k, f] : x.terms_) raw.emplace(TermKey{k.second, k.first}, fs_.conj(f));
        return canonicalize(std::move(raw));
    }

    /// Keeps the terms with |mu| = |nu|.
    AlgebraElement gauge_expectation(const AlgebraElement& x) const {
        TermMap raw;
        for (const auto& [k, f] : x.terms_)
            if (k.first.size() == k.second.size()) raw.emplace(k, f);
        return AlgebraElement(std::move(raw));
    }

    /// rho_k(x) = sum_{|w| = k} S_w x S_w*, over the listed letters (a non-unital
    /// endomorphism in infinite-alphabet mode).
    AlgebraElement rho(const AlgebraElement& x, std::size_t k) const {
        if (k == 0) return x;
        auto words = words_of_length(alphabet(), k, caps_.max_terms);
        if (words.size() * std::max<std::size_t>(x.size(), 1) > caps_.max_terms)
            fail(ErrorKind::resource, "star_algebra", "rho_k expansion exceeds the term cap", "rho_" + std::to_string(k));
        TermMap raw;
        for (const auto& w : words)
            for (const auto& [key, f] : x.terms_) accumulate(raw, {w + key.first, w + key.second}, f);
        return canonicalize(std::move(raw));
    }

    /// Applies sigma_g to every middle function.
    AlgebraElement shift_middle(const AlgebraElement& x, const GroupElement& g) const {
        TermMap raw;
        for (const auto& [k, f] : x.terms_) raw.emplace(k, fs_.shift(f, g));
        return canonicalize(std::move(raw));
    }

    /// u* x u.
    AlgebraElement multiplier_conjugate(const MultiplierWordSum& u, const AlgebraElement& x) const {
        AlgebraElement ue = from_multiplier(u);
        return multiply(multiply(adjoint(ue), x), ue);
    }

    bool is_self_adjoint(const AlgebraElement& x) const { return adjoint(x) == x; }
    bool is_projection(const AlgebraElement& x) const { return is_self_adjoint(x) && multiply(x, x) == x; }
    bool is_partial_isometry(const AlgebraElement& x) const {
        return multiply(multiply(x, adjoint(x)), x) == x;
    }

    /// The function f when x = f (a single (empty, empty) term), else nothing.
    std::optional<FiniteFunction> as_function(const AlgebraElement& x) const {
        if (x.is_zero()) return fs_.zero();
        if (x.size() != 1) return std::nullopt;
        const auto& [k, f] = *x.terms_.begin();
        if (!k.first.empty() || !k.second.empty()) return std::nullopt;
        return f;
    }

private:
    void accumulate(TermMap& raw, const TermKey& key, const FiniteFunction& f) const {
        check_letters(key.first, alphabet());
        check_letters(key.second, alphabet());
        auto [it, inserted] = raw.try_emplace(key, f);
        if (!inserted) it->second = fs_.add(it->second, f);
        if (raw.size() > caps_.max_terms)
            fail(ErrorKind::resource, "star_algebra", "element exceeds the term cap", "canonicalize");
    }

    AlgebraElement canonicalize(TermMap raw) const {
        for (auto it = raw.begin(); it != raw.end();)
            it = it->second.is_zero() ? raw.erase(it) : std::next(it);
        if (infinite() || raw.empty()) return AlgebraElement(std::move(raw));

        std::map<long long, TermMap> by_degree;
        for (auto& [k, f] : raw) {
            long long d = static_cast<long long>(k.first.size()) - static_cast<long long>(k.second.size());
            by_degree[d].emplace(k, std::move(f));
        }
        TermMap out;
        for (auto& [d, group] : by_degree) {
            std::size_t depth = 0;
            for (const auto& [k, f] : group) depth = std::max(depth, k.second.size());
            TermMap full = expand(group, depth);
            contract(full, depth);
            for (auto& [k, f] : full) out.emplace(k, std::move(f));
        }
        return AlgebraElement(std::move(out));
    }

    TermMap expand(const TermMap& group, std::size_t depth) const {
        TermMap full;
        std::map<std::size_t, std::vector<Word>> tails;
        for (const auto& [k, f] : group) {
            std::size_t extra = depth - k.second.size();
            if (extra == 0) {
                accumulate(full, k, f);
                continue;
            }
            auto& words = tails[extra];
            if (words.empty()) words = words_of_length(alphabet(), extra, caps_.max_terms);
            for (const auto& r : words) accumulate(full, {k.first + r, k.second + r}, fs_.shift(f, weight(r)));
        }
        for (auto it = full.begin(); it != full.end();)
            it = it->second.is_zero() ? full.erase(it) : std::next(it);
        return full;
    }

    /// Replaces complete families (mu i, nu i, sigma_{omega_i} g), i = 1..n, by (mu, nu, g).
    void contract(TermMap& terms, std::size_t depth) const {
        const std::size_t n = alphabet();
        for (std::size_t level = depth; level >= 1; --level) {
            std::map<TermKey, std::vector<TermMap::iterator>> families;
            for (auto it = terms.begin(); it != terms.end(); ++it) {
                const auto& [mu, nu] = it->first;
                if (nu.size() != level || mu.empty() || mu.back() != nu.back()) continue;
                families[{mu.prefix(mu.size() - 1), nu.prefix(nu.size() - 1)}].push_back(it);
            }
            for (auto& [parent, children] : families) {
                if (children.size() != n) continue;
                std::optional<FiniteFunction> g;
                bool ok = true;
                for (auto child : children) {
                    Word letter{child->first.first.back()};
                    auto candidate = fs_.shift(child->second, gamma::negate(descriptor(), weight(letter)));
                    if (!g)
                        g = std::move(candidate);
                    else if (!(*g == candidate)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                for (auto child : children) terms.erase(child);
                terms.emplace(parent, std::move(*g));
            }
        }
    }

    OmegaData omega_;
    Caps caps_;
    FunctionSpace fs_;
};

} // namespace quasifree

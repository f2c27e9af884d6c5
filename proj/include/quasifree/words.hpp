#pragma once

// Words over the generator alphabet, their weights, prefix calculus,
// enumeration, and orthogonal families with prescribed weights.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "semigroup.hpp"

namespace quasifree {

/// Finite sequence of 1-based generator indices. Ordered shortlex.
class Word {
public:
    using Letter = std::uint32_t;

    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter back() const { return letters_.back(); }

    Word operator+(const Word& o) const {
        Word r = *this;
        r.letters_.insert(r.letters_.end(), o.letters_.begin(), o.letters_.end());
        return r;
    }
    Word appended(Letter l) const {
        Word r = *this;
        r.letters_.push_back(l);
        return r;
    }
    Word prefix(std::size_t len) const { return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + len)); }
    Word suffix_from(std::size_t pos) const { return Word(std::vector<Letter>(letters_.begin() + pos, letters_.end())); }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.letters_ <=> b.letters_;
    }

    /// "[1,2,2]"; the empty word is "[]".
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < letters_.size(); ++i) s += (i ? "," : "") + std::to_string(letters_[i]);
        return s + "]";
    }

private:
    std::vector<Letter> letters_;
};

inline void check_letters(const Word& w, std::size_t alphabet) {
    for (auto l : w.letters())
        if (l < 1 || l > alphabet)
            fail(ErrorKind::argument, "word_combinatorics",
                 "letter " + std::to_string(l) + " outside alphabet 1.." + std::to_string(alphabet), "word " + w.str());
}

inline Counts counts_of(const Word& w, std::size_t alphabet) {
    check_letters(w, alphabet);
    Counts c(alphabet, 0);
    for (auto l : w.letters()) ++c[l - 1];
    return c;
}

inline GroupElement omega_of(const Word& w, const GroupDescriptor& desc, const OmegaData& omega) {
    return combine(desc, counts_of(w, omega.size()), omega);
}

/// Word with the given letter counts, letters in index order.
inline Word word_from_counts(const Counts& counts) {
    std::vector<Word::Letter> letters;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::uint64_t k = 0; k < counts[i]; ++k) letters.push_back(static_cast<Word::Letter>(i + 1));
    return Word(std::move(letters));
}

/// Outcome of S_mu* S_nu: S_rho when nu = mu rho, S_rho* when mu = nu rho, 0 otherwise.
struct LeftDivides {
    Word remainder;
    friend bool operator==(const LeftDivides&, const LeftDivides&) = default;
};
struct RightDivides {
    Word remainder;
    friend bool operator==(const RightDivides&, const RightDivides&) = default;
};
struct Orthogonal {
    friend bool operator==(const Orthogonal&, const Orthogonal&) = default;
};
using PrefixRelation = std::variant<LeftDivides, RightDivides, Orthogonal>;

inline PrefixRelation prefix_relation(const Word& mu, const Word& nu) {
    const std::size_t m = std::min(mu.size(), nu.size());
    for (std::size_t i = 0; i < m; ++i)
        if (mu[i] != nu[i]) return Orthogonal{};
    if (mu.size() <= nu.size()) return LeftDivides{nu.suffix_from(mu.size())};
    return RightDivides{mu.suffix_from(nu.size())};
}

inline bool orthogonal(const Word& a, const Word& b) { return std::holds_alternative<Orthogonal>(prefix_relation(a, b)); }

inline constexpr std::size_t default_word_cap = 1'000'000;

/// All words of length exactly k, lexicographic.
inline std::vector<Word> words_of_length(std::size_t n, std::size_t k, std::size_t cap = default_word_cap) {
    std::vector<Word> out{Word{}};
    for (std::size_t len = 0; len < k; ++len) {
        if (out.size() > cap / std::max<std::size_t>(n, 1))
            fail(ErrorKind::resource, "word_combinatorics", "word enumeration exceeds the cap",
                 "n=" + std::to_string(n) + " length " + std::to_string(k));
        std::vector<Word> next;
        next.reserve(out.size() * n);
        for (const auto& w : out)
            for (std::size_t l = 1; l <= n; ++l) next.push_back(w.appended(static_cast<Word::Letter>(l)));
        out = std::move(next);
    }
    return out;
}

/// All words of length <= max_len in length-then-lexicographic order.
inline std::vector<Word> enumerate_words(std::size_t n, std::size_t max_len, std::size_t cap = default_word_cap) {
    if (n < 1) fail(ErrorKind::argument, "word_combinatorics", "alphabet must be nonempty");
    std::vector<Word> out;
    std::vector<Word> level{Word{}};
    for (std::size_t len = 0;; ++len) {
        if (out.size() + level.size() > cap)
            fail(ErrorKind::resource, "word_combinatorics", "word enumeration exceeds the cap",
                 "n=" + std::to_string(n) + " max length " + std::to_string(max_len));
        out.insert(out.end(), level.begin(), level.end());
        if (len == max_len) break;
        std::vector<Word> next;
        for (const auto& w : level)
            for (std::size_t l = 1; l <= n; ++l) next.push_back(w.appended(static_cast<Word::Letter>(l)));
        level = std::move(next);
    }
    return out;
}

/// Target of one orthogonal-family member: an exact set of values, or a
/// half-open real interval [lo, hi).
struct ExactTarget {
    std::vector<GroupElement> points;
};
struct IntervalTarget {
    GroupElement lo;
    GroupElement hi;
};
using WordTarget = std::variant<ExactTarget, IntervalTarget>;

namespace detail {

inline std::optional<Counts> interval_suffix(const semigroup::SemigroupAnalysis& analysis, const GroupElement& base,
                                             const IntervalTarget& target) {
    const auto& desc = analysis.descriptor();
    const auto& omega = analysis.omega();
    const unsigned depth = analysis.limits().precision_depth;
    auto inside = [&](const GroupElement& g) {
        return gamma::compare_real(desc, g, target.lo, depth) != gamma::Order::less &&
               gamma::compare_real(desc, g, target.hi, depth) == gamma::Order::less;
    };
    std::map<GroupElement, Counts> seen;
    std::vector<GroupElement> frontier{base};
    seen[base] = Counts(omega.size(), 0);
    while (!frontier.empty()) {
        for (const auto& g : frontier)
            if (inside(g)) return seen[g];
        std::vector<GroupElement> next;
        for (const auto& g : frontier)
            for (std::size_t i = 0; i < omega.size(); ++i) {
                GroupElement h = gamma::add(desc, g, omega.weights[i]);
                if (seen.count(h)) continue;
                Counts c = seen[g];
                ++c[i];
                seen.emplace(h, std::move(c));
                next.push_back(std::move(h));
                if (seen.size() > analysis.limits().max_states) return std::nullopt;
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

inline std::string describe(const GroupDescriptor& desc, const WordTarget& t) {
    if (const auto* e = std::get_if<ExactTarget>(&t)) {
        std::string s = "{";
        for (std::size_t i = 0; i < e->points.size(); ++i) s += (i ? "," : "") + gamma::render(desc, e->points[i]);
        return s + "}";
    }
    const auto& iv = std::get<IntervalTarget>(t);
    return "[" + gamma::render(desc, iv.lo) + "," + gamma::render(desc, iv.hi) + ")";
}

} // namespace detail

/// Pairwise orthogonal words, the k-th with weight in targets[k]. Stems are the
/// first K words of length ceil(log_n K); suffixes come from membership witnesses.
inline std::vector<Word> orthogonal_family(const semigroup::SemigroupAnalysis& analysis,
                                           const std::vector<WordTarget>& targets) {
    const auto& desc = analysis.descriptor();
    const auto& omega = analysis.omega();
    const std::size_t n = omega.size();
    const std::size_t K = targets.size();
    if (K == 0) return {};
    std::size_t len = 0;
    for (std::size_t reach = 1; reach < K; ++len) {
        if (n < 2)
            fail(ErrorKind::construction, "word_combinatorics", "a single-letter alphabet has no orthogonal pairs");
        reach *= n;
    }
    auto stems = words_of_length(n, len);
    std::vector<Word> out;
    for (std::size_t k = 0; k < K; ++k) {
        const Word& stem = stems[k];
        const GroupElement base = omega_of(stem, desc, omega);
        std::optional<Counts> suffix;
        if (const auto* exact = std::get_if<ExactTarget>(&targets[k])) {
            for (const auto& p : exact->points) {
                auto w = analysis.member(gamma::sub(desc, p, base));
                if (w) {
                    suffix = w->counts;
                    break;
                }
            }
        } else {
            suffix = detail::interval_suffix(analysis, base, std::get<IntervalTarget>(targets[k]));
        }
        if (!suffix)
            fail(ErrorKind::construction, "word_combinatorics", "no correction suffix found",
                 "member(target - omega" + stem.str() + ") with target " + detail::describe(desc, targets[k]));
        out.push_back(stem + word_from_counts(*suffix));
    }
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b)
            if (!orthogonal(out[a], out[b]))
                fail(ErrorKind::internal, "word_combinatorics", "family members are not orthogonal",
                     out[a].str() + " vs " + out[b].str());
    return out;
}

/// K words all targeting the same set.
inline std::vector<Word> orthogonal_family(const semigroup::SemigroupAnalysis& analysis, std::size_t K,
                                           const WordTarget& target) {
    return orthogonal_family(analysis, std::vector<WordTarget>(K, target));
}

} // namespace quasifree

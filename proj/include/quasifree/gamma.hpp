#pragma once

// Exact models of the dual group: finitely generated discrete groups
// Z^d x Z/m_1 x ... x Z/m_t, and the real line presented over a declared
// Q-linearly independent basis of real numbers with rational enclosures.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace quasifree {

inline constexpr unsigned default_precision_depth = 64;

/// One declared basis number of a real-line group, e.g. sqrt2 in [1.414213, 1.414214].
/// An optional defining polynomial (coefficients lowest degree first) with a sign
/// change across the enclosure lets comparisons request bisection refinements.
struct BasisElement {
    std::string name;
    Rational lo;
    Rational hi;
    std::vector<Rational> polynomial;

    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

class GroupDescriptor {
public:
    enum class Kind { discrete, real_line };

    GroupDescriptor() = default;

    static GroupDescriptor discrete(std::size_t free_rank, std::vector<Integer> torsion = {}) {
        GroupDescriptor g;
        g.kind_ = Kind::discrete;
        g.free_rank_ = free_rank;
        for (const auto& m : torsion)
            if (m < 2) fail(ErrorKind::argument, "gamma_core", "torsion moduli must be >= 2", "modulus " + to_string(m));
        g.torsion_ = std::move(torsion);
        return g;
    }

    static GroupDescriptor real_line(std::vector<BasisElement> basis) {
        if (basis.empty()) fail(ErrorKind::argument, "gamma_core", "real_line basis must be nonempty");
        for (const auto& b : basis) {
            if (b.lo > b.hi)
                fail(ErrorKind::argument, "gamma_core", "empty enclosure", "basis " + b.name);
            if (b.name.empty() || b.name == "i" || b.name == "S" || b.name == "chi")
                fail(ErrorKind::argument, "gamma_core", "reserved or empty basis name", "basis '" + b.name + "'");
            if (!b.polynomial.empty() && b.lo < b.hi) {
                Rational a = eval_poly(b.polynomial, b.lo), c = eval_poly(b.polynomial, b.hi);
                if (a * c > 0)
                    fail(ErrorKind::argument, "gamma_core", "defining polynomial has no sign change on the enclosure",
                         "basis " + b.name);
            }
        }
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                if (basis[i].name == basis[j].name)
                    fail(ErrorKind::argument, "gamma_core", "duplicate basis name", basis[i].name);
        GroupDescriptor g;
        g.kind_ = Kind::real_line;
        g.basis_ = std::move(basis);
        return g;
    }

    Kind kind() const { return kind_; }
    bool is_discrete() const { return kind_ == Kind::discrete; }
    bool is_real() const { return kind_ == Kind::real_line; }
    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    const std::vector<BasisElement>& basis() const { return basis_; }

    /// Number of coordinates of an element.
    std::size_t dimension() const { return is_discrete() ? free_rank_ + torsion_.size() : basis_.size(); }

    bool is_finite() const { return is_discrete() && free_rank_ == 0; }

    Integer order() const {
        Integer n = 1;
        for (const auto& m : torsion_) n *= m;
        return n;
    }

    /// Least common multiple of the torsion moduli (1 when torsion-free).
    Integer exponent() const {
        Integer e = 1;
        for (const auto& m : torsion_) e = lcm_of(e, m);
        return e;
    }

    static Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
        Rational acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

private:
    Kind kind_ = Kind::discrete;
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
    std::vector<BasisElement> basis_;
};

/// Element of the dual group. Discrete: free coordinates then torsion residues
/// (kept reduced). Real line: rational coordinates over the declared basis.
/// Equality is coordinate-wise; the ordering is lexicographic and only serves
/// as a container key (use compare_real for the order of the line).
struct GroupElement {
    std::vector<Rational> coords;

    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coords == b.coords; }
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        if (a.coords.size() != b.coords.size()) return a.coords.size() < b.coords.size();
        for (std::size_t i = 0; i < a.coords.size(); ++i)
            if (a.coords[i] != b.coords[i]) return a.coords[i] < b.coords[i];
        return false;
    }
};

namespace gamma {

inline void check_arity(const GroupDescriptor& desc, const GroupElement& g, const char* what = "element") {
    if (g.coords.size() != desc.dimension())
        fail(ErrorKind::argument, "gamma_core",
             std::string(what) + " has " + std::to_string(g.coords.size()) + " coordinates, expected " +
                 std::to_string(desc.dimension()));
}

inline GroupElement reduce(const GroupDescriptor& desc, GroupElement g) {
    if (desc.is_discrete()) {
        for (std::size_t j = 0; j < desc.torsion().size(); ++j) {
            Rational& c = g.coords[desc.free_rank() + j];
            c = Rational(mod_floor(c.get_num(), desc.torsion()[j]));
        }
    }
    return g;
}

/// Validates arity, integrality (discrete) and reduces torsion residues.
inline GroupElement normalize(const GroupDescriptor& desc, GroupElement g) {
    check_arity(desc, g);
    if (desc.is_discrete())
        for (const auto& c : g.coords)
            if (!is_integral(c)) fail(ErrorKind::argument, "gamma_core", "discrete coordinates must be integers");
    return reduce(desc, std::move(g));
}

inline GroupElement zero(const GroupDescriptor& desc) { return {std::vector<Rational>(desc.dimension(), Rational(0))}; }

inline bool is_zero(const GroupElement& g) {
    for (const auto& c : g.coords)
        if (c != 0) return false;
    return true;
}

inline GroupElement add(const GroupDescriptor& desc, const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return reduce(desc, std::move(r));
}

inline GroupElement negate(const GroupDescriptor& desc, const GroupElement& a) {
    GroupElement r = a;
    for (auto& c : r.coords) c = -c;
    return reduce(desc, std::move(r));
}

inline GroupElement sub(const GroupDescriptor& desc, const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
    return reduce(desc, std::move(r));
}

inline GroupElement scale(const GroupDescriptor& desc, const GroupElement& a, const Rational& k) {
    GroupElement r = a;
    for (auto& c : r.coords) c *= k;
    return reduce(desc, std::move(r));
}

inline GroupElement from_integers(const GroupDescriptor& desc, const std::vector<long long>& values) {
    GroupElement g;
    for (long long v : values) g.coords.emplace_back(Integer(static_cast<long>(v)));
    return normalize(desc, std::move(g));
}

/// Unit vector along coordinate k.
inline GroupElement unit(const GroupDescriptor& desc, std::size_t k) {
    GroupElement g = zero(desc);
    g.coords.at(k) = 1;
    return reduce(desc, std::move(g));
}

/// All elements of a finite group in lexicographic order of residues.
inline std::vector<GroupElement> enumerate_finite(const GroupDescriptor& desc, std::size_t cap = 1'000'000) {
    if (!desc.is_finite()) fail(ErrorKind::feature, "gamma_core", "enumeration requires a finite group");
    if (desc.order() > Integer(static_cast<unsigned long>(cap)))
        fail(ErrorKind::resource, "gamma_core", "finite group too large to enumerate", "order " + to_string(desc.order()));
    std::vector<GroupElement> out{zero(desc)};
    for (std::size_t j = desc.torsion().size(); j-- > 0;) {
        std::vector<GroupElement> next;
        long m = desc.torsion()[j].get_si();
        for (const auto& g : out)
            for (long r = 0; r < m; ++r) {
                GroupElement h = g;
                h.coords[j] = r;
                next.push_back(std::move(h));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

enum class Order { less, equal, greater };

/// Order of the real line between two elements over the same real_line descriptor.
/// Equality is decided symbolically from coordinates; otherwise the sign of g - h is
/// read off interval arithmetic, bisecting basis enclosures that carry a defining
/// polynomial, up to `depth` rounds. Raises a precision error rather than guessing.
inline Order compare_real(const GroupDescriptor& desc, const GroupElement& g, const GroupElement& h,
                          unsigned depth = default_precision_depth) {
    if (!desc.is_real()) fail(ErrorKind::feature, "gamma_core", "compare_real needs a real_line descriptor");
    check_arity(desc, g);
    check_arity(desc, h);
    std::vector<Rational> diff(g.coords.size());
    bool all_zero = true;
    for (std::size_t j = 0; j < diff.size(); ++j) {
        diff[j] = g.coords[j] - h.coords[j];
        if (diff[j] != 0) all_zero = false;
    }
    if (all_zero) return Order::equal;

    std::vector<std::pair<Rational, Rational>> box;
    for (const auto& b : desc.basis()) box.emplace_back(b.lo, b.hi);

    for (unsigned round = 0;; ++round) {
        Rational lo = 0, hi = 0;
        for (std::size_t j = 0; j < diff.size(); ++j) {
            if (diff[j] >= 0) {
                lo += diff[j] * box[j].first;
                hi += diff[j] * box[j].second;
            } else {
                lo += diff[j] * box[j].second;
                hi += diff[j] * box[j].first;
            }
        }
        if (lo > 0) return Order::greater;
        if (hi < 0) return Order::less;
        if (round >= depth) break;
        bool refined = false;
        for (std::size_t j = 0; j < diff.size(); ++j) {
            const auto& basis = desc.basis()[j];
            auto& [blo, bhi] = box[j];
            if (diff[j] == 0 || blo == bhi || basis.polynomial.empty()) continue;
            Rational mid = (blo + bhi) / 2;
            Rational at_lo = GroupDescriptor::eval_poly(basis.polynomial, blo);
            Rational at_mid = GroupDescriptor::eval_poly(basis.polynomial, mid);
            if (at_mid == 0) {
                blo = bhi = mid;
            } else if ((at_lo < 0) == (at_mid < 0) && at_lo != 0) {
                blo = mid;
            } else {
                bhi = mid;
            }
            refined = true;
        }
        if (!refined) break;
    }
    fail(ErrorKind::precision, "gamma_core", "enclosures too coarse to separate a nonzero value",
         "compare_real at depth " + std::to_string(depth));
}

inline int real_sign(const GroupDescriptor& desc, const GroupElement& g, unsigned depth = default_precision_depth) {
    switch (compare_real(desc, g, zero(desc), depth)) {
    case Order::less: return -1;
    case Order::equal: return 0;
    case Order::greater: return 1;
    }
    return 0;
}

/// Text form used by the expression grammar: "3", "(1,0)" for discrete groups,
/// "3/2", "1+2*sqrt2", "-sqrt2" over a real basis.
inline std::string render(const GroupDescriptor& desc, const GroupElement& g) {
    if (desc.is_discrete()) {
        if (g.coords.size() == 1) return to_string(g.coords[0]);
        std::string s = "(";
        for (std::size_t i = 0; i < g.coords.size(); ++i) s += (i ? "," : "") + to_string(g.coords[i]);
        return s + ")";
    }
    std::string s;
    for (std::size_t j = 0; j < g.coords.size(); ++j) {
        const Rational& c = g.coords[j];
        if (c == 0) continue;
        const std::string& name = desc.basis()[j].name;
        std::string term;
        if (name == "1")
            term = to_string(c);
        else if (c == 1)
            term = name;
        else if (c == -1)
            term = "-" + name;
        else
            term = to_string(c) + "*" + name;
        if (!s.empty() && term[0] != '-') s += "+";
        s += term;
    }
    return s.empty() ? "0" : s;
}

} // namespace gamma

/// Multiplicity mode of the generator list: a finite alphabet {1..n}, or the
/// listed weights recurring with infinite multiplicity (the O_infinity model).
enum class AlphabetMode { finite, infinite_repeating };

struct OmegaData {
    std::vector<GroupElement> weights;
    AlphabetMode mode = AlphabetMode::finite;

    std::size_t size() const { return weights.size(); }
    bool infinite() const { return mode == AlphabetMode::infinite_repeating; }
};

inline OmegaData make_omega(const GroupDescriptor& desc, std::vector<GroupElement> weights,
                            AlphabetMode mode = AlphabetMode::finite) {
    if (mode == AlphabetMode::finite && weights.size() < 2)
        fail(ErrorKind::argument, "gamma_core", "a finite alphabet needs at least two weights");
    if (weights.empty()) fail(ErrorKind::argument, "gamma_core", "weight list must be nonempty");
    for (auto& w : weights) w = gamma::normalize(desc, std::move(w));
    return OmegaData{std::move(weights), mode};
}

/// Letter counts of a word; index i counts occurrences of generator i+1.
using Counts = std::vector<std::uint64_t>;

inline std::uint64_t total(const Counts& a) {
    std::uint64_t t = 0;
    for (auto c : a) t += c;
    return t;
}

/// sum_i a_i * omega_i, evaluated exactly.
inline GroupElement combine(const GroupDescriptor& desc, const Counts& a, const OmegaData& omega) {
    if (a.size() != omega.size())
        fail(ErrorKind::argument, "gamma_core",
             "count vector has length " + std::to_string(a.size()) + ", expected " + std::to_string(omega.size()),
             "combine");
    GroupElement r = gamma::zero(desc);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Rational k(Integer(static_cast<unsigned long>(a[i])));
        for (std::size_t j = 0; j < r.coords.size(); ++j) r.coords[j] += k * omega.weights[i].coords[j];
    }
    return gamma::reduce(desc, std::move(r));
}

} // namespace quasifree

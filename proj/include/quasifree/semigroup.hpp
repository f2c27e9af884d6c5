#pragma once

// Decision procedures with witnesses for the semigroup generated by the
// weights omega_1..omega_n inside the dual group.
//
// Discrete groups (and exact point questions over the real line) are handled
// through an integer model Z^D with torsion moduli. The generators that occur
// in some non-negative relation sum_i a_i omega_i = 0 are invertible inside the
// semigroup; they generate a subgroup L that the semigroup contains. Modulo L
// the remaining generators span a pointed cone, so a rational functional that
// is >= 1 on each of them bounds every breadth-first search.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace quasifree {

/// Non-negative letter counts a with combine(a) equal to the queried target.
struct MembershipWitness {
    Counts counts;
    friend bool operator==(const MembershipWitness&, const MembershipWitness&) = default;
};

struct SearchLimits {
    std::size_t max_states = 200'000;
    unsigned precision_depth = default_precision_depth;
};

namespace semigroup {

using IntVector = std::vector<Integer>;

/// Group elements as integer vectors: free coordinates first, then torsion
/// residues. Real-line coordinates are scaled by the common denominator of the
/// weights, so only targets on that lattice can be semigroup members.
class IntegerModel {
public:
    IntegerModel(const GroupDescriptor& desc, const OmegaData& omega) : desc_(desc) {
        if (desc.is_discrete()) {
            free_dim_ = desc.free_rank();
            moduli_ = desc.torsion();
        } else {
            free_dim_ = desc.dimension();
            for (const auto& w : omega.weights)
                for (const auto& c : w.coords) scale_ = lcm_of(scale_, c.get_den());
        }
        for (const auto& w : omega.weights) {
            auto v = embed(w);
            if (!v) fail(ErrorKind::internal, "semigroup_engine", "weight not on its own lattice");
            generators_.push_back(std::move(*v));
        }
    }

    std::size_t dim() const { return free_dim_ + moduli_.size(); }
    std::size_t free_dim() const { return free_dim_; }
    const std::vector<Integer>& moduli() const { return moduli_; }
    const std::vector<IntVector>& generators() const { return generators_; }

    std::optional<IntVector> embed(const GroupElement& g) const {
        gamma::check_arity(desc_, g);
        IntVector v;
        for (const auto& c : g.coords) {
            Rational s = c * Rational(scale_);
            if (!is_integral(s)) return std::nullopt;
            v.push_back(s.get_num());
        }
        return reduce(std::move(v));
    }

    IntVector reduce(IntVector v) const {
        for (std::size_t j = 0; j < moduli_.size(); ++j) v[free_dim_ + j] = mod_floor(v[free_dim_ + j], moduli_[j]);
        return v;
    }

    IntVector add(const IntVector& a, const IntVector& b) const {
        IntVector r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return reduce(std::move(r));
    }

    IntVector sub(const IntVector& a, const IntVector& b) const {
        IntVector r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
        return reduce(std::move(r));
    }

private:
    GroupDescriptor desc_;
    std::size_t free_dim_ = 0;
    std::vector<Integer> moduli_;
    Integer scale_ = 1;
    std::vector<IntVector> generators_;
};

/// Coordinates on Z^D / (span of given columns + torsion relations):
/// free part first, then residues modulo the nontrivial invariant factors.
class Quotient {
public:
    Quotient() = default;

    Quotient(const IntegerModel& model, const std::vector<IntVector>& columns) {
        const std::size_t D = model.dim();
        const std::size_t cols = columns.size() + model.moduli().size();
        linalg::IntegerMatrix R(D, std::vector<Integer>(cols, Integer(0)));
        for (std::size_t c = 0; c < columns.size(); ++c)
            for (std::size_t r = 0; r < D; ++r) R[r][c] = columns[c][r];
        for (std::size_t k = 0; k < model.moduli().size(); ++k)
            R[model.free_dim() + k][columns.size() + k] = model.moduli()[k];
        auto snf = linalg::smith_normal_form(R, D, cols);
        U_ = std::move(snf.U);
        for (std::size_t k = snf.rank; k < D; ++k) free_rows_.push_back(k);
        for (std::size_t k = 0; k < snf.rank; ++k)
            if (snf.diagonal[k] != 1) torsion_rows_.emplace_back(k, snf.diagonal[k]);
    }

    std::size_t free_dim() const { return free_rows_.size(); }
    bool trivial() const { return free_rows_.empty() && torsion_rows_.empty(); }

    IntVector map(const IntVector& x) const {
        IntVector y;
        y.reserve(free_rows_.size() + torsion_rows_.size());
        auto row = [&](std::size_t k) {
            Integer acc = 0;
            for (std::size_t j = 0; j < x.size(); ++j) acc += U_[k][j] * x[j];
            return acc;
        };
        for (auto k : free_rows_) y.push_back(row(k));
        for (const auto& [k, m] : torsion_rows_) y.push_back(mod_floor(row(k), m));
        return y;
    }

    IntVector add(const IntVector& a, const IntVector& b) const {
        IntVector r = a;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] += b[i];
            if (i >= free_rows_.size()) r[i] = mod_floor(r[i], torsion_rows_[i - free_rows_.size()].second);
        }
        return r;
    }

private:
    linalg::IntegerMatrix U_;
    std::vector<std::size_t> free_rows_;
    std::vector<std::pair<std::size_t, Integer>> torsion_rows_;
};

/// Structural analysis of one weight list; all queries reuse it.
class SemigroupAnalysis {
public:
    SemigroupAnalysis(GroupDescriptor desc, OmegaData omega, SearchLimits limits = {})
        : desc_(std::move(desc)), omega_(std::move(omega)), limits_(limits), model_(desc_, omega_) {
        const std::size_t n = omega_.size();
        const auto& gens = model_.generators();
        const std::size_t d = model_.free_dim();

        // Invertible generators: a_i > 0 in some rational solution of A_free a = 0, a >= 0.
        invertible_.assign(n, false);
        relations_.assign(n, Counts{});
        for (std::size_t i = 0; i < n; ++i) {
            linalg::RationalMatrix M(d + 1, std::vector<Rational>(n, Rational(0)));
            std::vector<Rational> b(d + 1, Rational(0));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < n; ++c) M[r][c] = Rational(gens[c][r]);
            M[d][i] = 1;
            b[d] = 1;
            auto sol = linalg::nonnegative_solution(M, b);
            if (!sol) continue;
            invertible_[i] = true;
            Integer den = 1;
            for (const auto& v : *sol) den = lcm_of(den, v.get_den());
            den *= model_exponent();
            Counts rel(n, 0);
            for (std::size_t c = 0; c < n; ++c) {
                Rational v = (*sol)[c] * Rational(den);
                rel[c] = static_cast<std::uint64_t>(to_int64(v.get_num(), "relation entry"));
            }
            relations_[i] = std::move(rel);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (invertible_[i]) {
                invertible_columns_.push_back(gens[i]);
                invertible_index_.push_back(i);
            } else {
                pointed_index_.push_back(i);
            }
        }
        quotient_ = Quotient(model_, invertible_columns_);
        generated_ = Quotient(model_, gens).trivial();
        for (auto j : pointed_index_) pointed_images_.push_back(quotient_.map(gens[j]));

        // Functional on the free part of the quotient that is >= 1 on every pointed generator.
        const std::size_t r = quotient_.free_dim();
        potential_.assign(r, Rational(0));
        if (!pointed_index_.empty()) {
            const std::size_t m = pointed_index_.size();
            linalg::RationalMatrix M(m, std::vector<Rational>(2 * r + m, Rational(0)));
            std::vector<Rational> b(m, Rational(1));
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t k = 0; k < r; ++k) {
                    M[j][k] = Rational(pointed_images_[j][k]);
                    M[j][r + k] = -Rational(pointed_images_[j][k]);
                }
                M[j][2 * r + j] = -1;
            }
            auto sol = linalg::nonnegative_solution(M, b);
            if (!sol)
                fail(ErrorKind::internal, "semigroup_engine", "pointed generators admit no separating functional");
            for (std::size_t k = 0; k < r; ++k) potential_[k] = (*sol)[k] - (*sol)[r + k];
        }
    }

    const GroupDescriptor& descriptor() const { return desc_; }
    const OmegaData& omega() const { return omega_; }
    const SearchLimits& limits() const { return limits_; }
    const IntegerModel& model() const { return model_; }

    /// Generators occurring in some nontrivial non-negative relation.
    const std::vector<bool>& invertible() const { return invertible_; }
    bool pointed() const { return invertible_index_.empty(); }
    bool all_invertible() const { return pointed_index_.empty(); }
    /// The weights generate the whole group (as a group).
    bool generates_group() const { return generated_; }

    /// Value of the separating functional at a group element, modulo the invertible part.
    std::optional<Rational> potential(const GroupElement& g) const {
        auto v = model_.embed(g);
        if (!v) return std::nullopt;
        return potential_of(quotient_.map(*v));
    }

    std::optional<MembershipWitness> member(const GroupElement& target) const {
        auto v = model_.embed(gamma::normalize(desc_, target));
        if (!v) return std::nullopt;
        const IntVector goal = quotient_.map(*v);
        const Rational budget = potential_of(goal);
        if (budget < 0) return std::nullopt;

        // Breadth-first over the pointed generators in the quotient.
        std::map<IntVector, Counts> seen;
        std::vector<IntVector> frontier{quotient_.map(model_.reduce(IntVector(model_.dim(), Integer(0))))};
        seen[frontier[0]] = Counts(omega_.size(), 0);
        std::optional<Counts> pointed_part;
        for (Integer level = 0; !frontier.empty(); ++level) {
            for (const auto& s : frontier)
                if (s == goal) {
                    pointed_part = seen[s];
                    break;
                }
            if (pointed_part || Rational(level) >= budget) break;
            std::vector<IntVector> next;
            for (const auto& s : frontier) {
                for (std::size_t k = 0; k < pointed_index_.size(); ++k) {
                    IntVector t = quotient_.add(s, pointed_images_[k]);
                    if (potential_of(t) > budget || seen.count(t)) continue;
                    Counts c = seen[s];
                    ++c[pointed_index_[k]];
                    seen.emplace(t, std::move(c));
                    next.push_back(std::move(t));
                    if (seen.size() > limits_.max_states)
                        fail(ErrorKind::resource, "semigroup_engine", "membership search exceeded the state cap",
                             "member " + gamma::render(desc_, target));
                }
            }
            frontier = std::move(next);
        }
        if (!pointed_part) return std::nullopt;

        // The remainder lies in the subgroup generated by the invertible weights.
        IntVector rest = *v;
        for (std::size_t i = 0; i < omega_.size(); ++i)
            for (std::uint64_t c = 0; c < (*pointed_part)[i]; ++c) rest = model_.sub(rest, model_.generators()[i]);
        Counts counts = *pointed_part;
        if (!invertible_index_.empty()) {
            auto z = solve_in_invertible(rest);
            if (!z) fail(ErrorKind::internal, "semigroup_engine", "quotient remainder not in the invertible subgroup");
            Counts shift = strictly_positive_relation();
            Integer k = 0;
            for (std::size_t t = 0; t < invertible_index_.size(); ++t) {
                std::size_t i = invertible_index_[t];
                if ((*z)[t] < 0) {
                    Integer need = ceil_of(make_rational(-(*z)[t], Integer(static_cast<unsigned long>(shift[i]))));
                    if (need > k) k = need;
                }
            }
            for (std::size_t t = 0; t < invertible_index_.size(); ++t) {
                std::size_t i = invertible_index_[t];
                Integer c = (*z)[t] + k * Integer(static_cast<unsigned long>(shift[i]));
                counts[i] += static_cast<std::uint64_t>(to_int64(c, "witness count"));
            }
        } else {
            for (const auto& c : rest)
                if (c != 0) fail(ErrorKind::internal, "semigroup_engine", "pointed search ended off target");
        }
        counts = shortest_or(counts, *v, false);
        check_witness(counts, target, "member");
        return MembershipWitness{std::move(counts)};
    }

    /// Nonzero counts a with combine(a) = 0, of least total, or nothing.
    std::optional<MembershipWitness> zero_word() const {
        if (invertible_index_.empty()) return std::nullopt;
        Counts best;
        for (auto i : invertible_index_)
            if (best.empty() || total(relations_[i]) < total(best)) best = relations_[i];
        IntVector origin = model_.reduce(IntVector(model_.dim(), Integer(0)));
        Counts counts = shortest_or(best, origin, true);
        check_witness(counts, gamma::zero(desc_), "zero_word");
        return MembershipWitness{std::move(counts)};
    }

    /// Integer relation with positive entries exactly on the invertible generators.
    Counts strictly_positive_relation() const {
        Counts r(omega_.size(), 0);
        for (auto i : invertible_index_)
            for (std::size_t c = 0; c < r.size(); ++c) r[c] += relations_[i][c];
        return r;
    }

private:
    Integer model_exponent() const {
        Integer e = 1;
        for (const auto& m : model_.moduli()) e = lcm_of(e, m);
        return e;
    }

    Rational potential_of(const IntVector& q) const {
        Rational acc = 0;
        for (std::size_t k = 0; k < potential_.size(); ++k) acc += potential_[k] * Rational(q[k]);
        return acc;
    }

    /// Integer z (indexed like invertible_index_) with sum z_t gen_t = rest in the model.
    std::optional<IntVector> solve_in_invertible(const IntVector& rest) const {
        const std::size_t D = model_.dim();
        const std::size_t m = invertible_index_.size();
        const std::size_t cols = m + model_.moduli().size();
        linalg::IntegerMatrix A(D, std::vector<Integer>(cols, Integer(0)));
        for (std::size_t t = 0; t < m; ++t)
            for (std::size_t r = 0; r < D; ++r) A[r][t] = model_.generators()[invertible_index_[t]][r];
        for (std::size_t k = 0; k < model_.moduli().size(); ++k) A[model_.free_dim() + k][m + k] = model_.moduli()[k];
        auto z = linalg::integer_solution(A, D, cols, rest);
        if (!z) return std::nullopt;
        z->resize(m);
        return z;
    }

    /// Breadth-first search over group values for a count vector reaching `goal`
    /// (nonempty when `nonempty`), bounded by the total of a known witness.
    /// Falls back to the known witness when the state cap is reached.
    Counts shortest_or(const Counts& known, const IntVector& goal, bool nonempty) const {
        const std::uint64_t bound = total(known);
        const auto& gens = model_.generators();
        const std::size_t n = omega_.size();
        std::map<IntVector, Counts> seen;
        std::vector<IntVector> frontier;
        IntVector origin = model_.reduce(IntVector(model_.dim(), Integer(0)));
        if (nonempty) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!invertible_[i]) continue;
                Counts c(n, 0);
                c[i] = 1;
                if (gens[i] == goal) return c;
                if (seen.emplace(gens[i], c).second) frontier.push_back(gens[i]);
            }
        } else {
            if (origin == goal) return Counts(n, 0);
            seen.emplace(origin, Counts(n, 0));
            frontier.push_back(origin);
        }
        for (std::uint64_t level = nonempty ? 1 : 0; level < bound && !frontier.empty(); ++level) {
            std::vector<IntVector> next;
            for (const auto& s : frontier) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (nonempty && !invertible_[i]) continue;
                    IntVector t = model_.add(s, gens[i]);
                    if (t == goal) {
                        Counts c = seen[s];
                        ++c[i];
                        return c;
                    }
                    if (seen.count(t)) continue;
                    Counts c = seen[s];
                    ++c[i];
                    seen.emplace(t, std::move(c));
                    next.push_back(std::move(t));
                    if (seen.size() > limits_.max_states) return known;
                }
            }
            frontier = std::move(next);
        }
        return known;
    }

    void check_witness(const Counts& counts, const GroupElement& target, const char* query) const {
        if (!(combine(desc_, counts, omega_) == gamma::normalize(desc_, target)))
            fail(ErrorKind::internal, "semigroup_engine", "witness does not re-evaluate to its target", query);
    }

    GroupDescriptor desc_;
    OmegaData omega_;
    SearchLimits limits_;
    IntegerModel model_;
    std::vector<bool> invertible_;
    std::vector<Counts> relations_;
    std::vector<IntVector> invertible_columns_;
    std::vector<std::size_t> invertible_index_;
    std::vector<std::size_t> pointed_index_;
    std::vector<IntVector> pointed_images_;
    Quotient quotient_;
    bool generated_ = false;
    std::vector<Rational> potential_;
};

enum class ClosureReason { lattice_and_cone, finite_bfs, real_sign_rank };

inline const char* to_string(ClosureReason r) {
    switch (r) {
    case ClosureReason::lattice_and_cone: return "lattice_and_cone";
    case ClosureReason::finite_bfs: return "finite_bfs";
    case ClosureReason::real_sign_rank: return "real_sign_rank";
    }
    return "unknown";
}

/// Whether the closed semigroup generated by the weights is the whole group.
struct ClosureCertificate {
    bool verdict = false;
    ClosureReason reason = ClosureReason::lattice_and_cone;
    // discrete data
    bool generates_group = false;
    std::vector<bool> invertible;
    std::vector<GroupElement> closure_set; // finite groups only, sorted
    // real-line data
    std::vector<int> signs;
    std::size_t rational_rank = 0;
    std::optional<GroupElement> counterexample;
};

struct NegGenReport {
    bool in_closure = false;
    std::optional<MembershipWitness> witness; // discrete: counts with combine = -omega_i
    std::string reason;
};

namespace detail {

inline std::vector<GroupElement> finite_closure(const GroupDescriptor& desc, const OmegaData& omega) {
    std::map<GroupElement, bool> seen;
    std::vector<GroupElement> frontier{gamma::zero(desc)};
    seen[frontier[0]] = true;
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier)
            for (const auto& w : omega.weights) {
                GroupElement h = gamma::add(desc, g, w);
                if (seen.emplace(h, true).second) next.push_back(std::move(h));
            }
        frontier = std::move(next);
    }
    std::vector<GroupElement> out;
    for (const auto& [g, _] : seen) out.push_back(g);
    return out;
}

inline std::vector<int> real_signs(const GroupDescriptor& desc, const OmegaData& omega, unsigned depth) {
    std::vector<int> signs;
    for (const auto& w : omega.weights) signs.push_back(gamma::real_sign(desc, w, depth));
    return signs;
}

inline ClosureCertificate real_closure(const GroupDescriptor& desc, const OmegaData& omega, unsigned depth) {
    ClosureCertificate cert;
    cert.reason = ClosureReason::real_sign_rank;
    cert.signs = real_signs(desc, omega, depth);
    linalg::RationalMatrix rows;
    std::optional<std::size_t> pos, neg;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (cert.signs[i] == 0) continue;
        rows.push_back(omega.weights[i].coords);
        if (cert.signs[i] > 0 && !pos) pos = i;
        if (cert.signs[i] < 0 && !neg) neg = i;
    }
    cert.rational_rank = linalg::rational_rank(rows);
    if (pos && neg && cert.rational_rank >= 2) {
        cert.verdict = true;
        return cert;
    }
    if (pos && neg) {
        // Every weight is q_i * beta for beta = a positive weight; the closure is the lattice g*beta.
        const auto& beta = omega.weights[*pos];
        std::size_t k = 0;
        while (beta.coords[k] == 0) ++k;
        Integer num_gcd = 0, den_lcm = 1;
        for (const auto& w : omega.weights) {
            Rational q = w.coords[k] / beta.coords[k];
            if (q == 0) continue;
            num_gcd = gcd_of(num_gcd, q.get_num());
            den_lcm = lcm_of(den_lcm, q.get_den());
        }
        cert.counterexample = gamma::scale(desc, beta, make_rational(num_gcd, den_lcm * 2));
    } else if (pos) {
        cert.counterexample = gamma::negate(desc, omega.weights[*pos]);
    } else if (neg) {
        cert.counterexample = gamma::negate(desc, omega.weights[*neg]);
    } else {
        cert.counterexample = gamma::unit(desc, 0);
    }
    return cert;
}

} // namespace detail

inline std::optional<MembershipWitness> member(const GroupElement& target, const GroupDescriptor& desc,
                                               const OmegaData& omega, SearchLimits limits = {}) {
    return SemigroupAnalysis(desc, omega, limits).member(target);
}

inline std::optional<MembershipWitness> zero_word_exists(const GroupDescriptor& desc, const OmegaData& omega,
                                                         SearchLimits limits = {}) {
    return SemigroupAnalysis(desc, omega, limits).zero_word();
}

inline ClosureCertificate closure_equals_gamma(const SemigroupAnalysis& analysis) {
    const auto& desc = analysis.descriptor();
    const auto& omega = analysis.omega();
    if (desc.is_real()) return detail::real_closure(desc, omega, analysis.limits().precision_depth);

    ClosureCertificate cert;
    cert.generates_group = analysis.generates_group();
    cert.invertible = analysis.invertible();
    if (desc.is_finite()) {
        cert.reason = ClosureReason::finite_bfs;
        cert.closure_set = detail::finite_closure(desc, omega);
        cert.verdict = Integer(static_cast<unsigned long>(cert.closure_set.size())) == desc.order();
        if (!cert.verdict)
            for (const auto& g : gamma::enumerate_finite(desc))
                if (!std::binary_search(cert.closure_set.begin(), cert.closure_set.end(), g)) {
                    cert.counterexample = g;
                    break;
                }
        return cert;
    }
    cert.reason = ClosureReason::lattice_and_cone;
    cert.verdict = cert.generates_group && analysis.all_invertible();
    if (cert.verdict) return cert;
    if (!cert.generates_group) {
        Quotient q(analysis.model(), analysis.model().generators());
        for (std::size_t k = 0; k < desc.dimension(); ++k) {
            GroupElement e = gamma::unit(desc, k);
            auto image = q.map(*analysis.model().embed(e));
            bool zero = std::all_of(image.begin(), image.end(), [](const Integer& c) { return c == 0; });
            if (!zero) {
                cert.counterexample = e;
                break;
            }
        }
    } else {
        for (std::size_t j = 0; j < omega.size(); ++j)
            if (!cert.invertible[j]) {
                cert.counterexample = gamma::negate(desc, omega.weights[j]);
                break;
            }
    }
    return cert;
}

inline ClosureCertificate closure_equals_gamma(const GroupDescriptor& desc, const OmegaData& omega,
                                               SearchLimits limits = {}) {
    if (desc.is_real()) return detail::real_closure(desc, omega, limits.precision_depth);
    return closure_equals_gamma(SemigroupAnalysis(desc, omega, limits));
}

/// Whether -omega_i lies in the closed semigroup generated by the weights.
inline NegGenReport neg_gen_report(const SemigroupAnalysis& analysis, std::size_t i) {
    const auto& desc = analysis.descriptor();
    const auto& omega = analysis.omega();
    if (i >= omega.size())
        fail(ErrorKind::argument, "semigroup_engine", "generator index out of range",
             "neg_gen index " + std::to_string(i + 1));
    NegGenReport report;
    if (desc.is_discrete()) {
        report.witness = analysis.member(gamma::negate(desc, omega.weights[i]));
        report.in_closure = report.witness.has_value();
        report.reason = report.in_closure ? "membership_witness" : "membership_refuted";
        return report;
    }
    auto signs = detail::real_signs(desc, omega, analysis.limits().precision_depth);
    if (signs[i] == 0) {
        report.in_closure = true;
        report.reason = "zero_weight";
        return report;
    }
    for (int s : signs)
        if (s == -signs[i]) {
            report.in_closure = true;
            report.reason = "opposite_sign_weight";
            return report;
        }
    report.reason = "one_sided_closure";
    return report;
}

inline bool neg_gen_in_closure(const GroupDescriptor& desc, const OmegaData& omega, std::size_t i,
                               SearchLimits limits = {}) {
    return neg_gen_report(SemigroupAnalysis(desc, omega, limits), i).in_closure;
}

} // namespace semigroup
} // namespace quasifree

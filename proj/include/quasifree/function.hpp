#pragma once

// Exactly represented functions on the dual group: a constant background value
// plus finitely many deviations. Discrete groups store deviating points; the
// real line stores sorted disjoint half-open pieces [lo, hi) with exact
// symbolic endpoints. Finite groups store every value explicitly (background 0),
// so each function has exactly one representation.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "rational.hpp"

namespace quasifree {

using Scalar = GaussianRational;

struct Piece {
    GroupElement lo;
    GroupElement hi;
    Scalar value;
    friend bool operator==(const Piece&, const Piece&) = default;
};

class FiniteFunction {
public:
    FiniteFunction() = default;

    const Scalar& background() const { return background_; }
    const std::map<GroupElement, Scalar>& points() const { return points_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    bool is_zero() const { return background_.is_zero() && points_.empty() && pieces_.empty(); }
    bool is_constant() const { return points_.empty() && pieces_.empty(); }

    friend bool operator==(const FiniteFunction&, const FiniteFunction&) = default;

private:
    friend class FunctionSpace;
    Scalar background_;
    std::map<GroupElement, Scalar> points_;
    std::vector<Piece> pieces_;
};

/// Arithmetic on FiniteFunction over one descriptor.
class FunctionSpace {
public:
    explicit FunctionSpace(GroupDescriptor desc, unsigned depth = default_precision_depth)
        : desc_(std::move(desc)), depth_(depth) {}

    const GroupDescriptor& descriptor() const { return desc_; }
    unsigned depth() const { return depth_; }

    FiniteFunction zero() const { return {}; }

    FiniteFunction constant(const Scalar& c) const {
        FiniteFunction f;
        if (desc_.is_finite()) {
            if (!c.is_zero())
                for (auto& g : gamma::enumerate_finite(desc_)) f.points_.emplace(std::move(g), c);
        } else {
            f.background_ = c;
        }
        return f;
    }

    /// Value c on the listed points of a discrete group.
    FiniteFunction indicator(const std::vector<GroupElement>& points, const Scalar& c = Scalar(1)) const {
        if (!desc_.is_discrete())
            fail(ErrorKind::argument, "star_algebra", "point indicators need a discrete group; use intervals");
        FiniteFunction f;
        if (c.is_zero()) return f;
        for (const auto& p : points) f.points_[gamma::normalize(desc_, p)] = c;
        return f;
    }

    /// Value c on [lo, hi) of the real line.
    FiniteFunction interval(const GroupElement& lo, const GroupElement& hi, const Scalar& c = Scalar(1)) const {
        if (!desc_.is_real()) fail(ErrorKind::argument, "star_algebra", "intervals need a real_line group");
        gamma::check_arity(desc_, lo);
        gamma::check_arity(desc_, hi);
        FiniteFunction f;
        if (c.is_zero() || compare(lo, hi) != gamma::Order::less) return f;
        f.pieces_.push_back(Piece{lo, hi, c});
        return f;
    }

    Scalar evaluate(const FiniteFunction& f, const GroupElement& x) const {
        if (desc_.is_discrete()) {
            auto it = f.points_.find(gamma::normalize(desc_, x));
            return it == f.points_.end() ? f.background_ : it->second;
        }
        for (const auto& p : f.pieces_)
            if (compare(p.lo, x) != gamma::Order::greater && compare(x, p.hi) == gamma::Order::less) return p.value;
        return f.background_;
    }

    /// (sigma_g f)(x) = f(x + g): the support moves by -g.
    FiniteFunction shift(const FiniteFunction& f, const GroupElement& g) const {
        if (gamma::is_zero(g)) return f;
        FiniteFunction r;
        r.background_ = f.background_;
        for (const auto& [x, v] : f.points_) r.points_.emplace(gamma::sub(desc_, x, g), v);
        for (const auto& p : f.pieces_)
            r.pieces_.push_back(Piece{gamma::sub(desc_, p.lo, g), gamma::sub(desc_, p.hi, g), p.value});
        return r;
    }

    FiniteFunction conj(const FiniteFunction& f) const {
        return map_values(f, [](const Scalar& v) { return v.conj(); });
    }

    FiniteFunction scale(const FiniteFunction& f, const Scalar& c) const {
        return map_values(f, [&](const Scalar& v) { return v * c; });
    }

    FiniteFunction add(const FiniteFunction& a, const FiniteFunction& b) const {
        return combine(a, b, [](const Scalar& x, const Scalar& y) { return x + y; });
    }

    FiniteFunction sub(const FiniteFunction& a, const FiniteFunction& b) const {
        return combine(a, b, [](const Scalar& x, const Scalar& y) { return x - y; });
    }

    FiniteFunction multiply(const FiniteFunction& a, const FiniteFunction& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        return combine(a, b, [](const Scalar& x, const Scalar& y) { return x * y; });
    }

    /// Pointwise map; the map must send 0 to 0 on finite groups.
    template <class F>
    FiniteFunction map_values(const FiniteFunction& f, F&& op) const {
        FiniteFunction r;
        r.background_ = op(f.background_);
        for (const auto& [x, v] : f.points_) {
            Scalar w = op(v);
            if (w != r.background_) r.points_.emplace(x, std::move(w));
        }
        for (const auto& p : f.pieces_) r.pieces_.push_back(Piece{p.lo, p.hi, op(p.value)});
        tidy(r);
        return r;
    }

    /// Every value (background included when it is attained) satisfies pred.
    template <class P>
    bool all_values(const FiniteFunction& f, P&& pred) const {
        if (!desc_.is_finite() && !pred(f.background_)) return false;
        for (const auto& [x, v] : f.points_)
            if (!pred(v)) return false;
        for (const auto& p : f.pieces_)
            if (!pred(p.value)) return false;
        return true;
    }

    /// Support as listed points (discrete, background must be 0).
    std::vector<GroupElement> support_points(const FiniteFunction& f) const {
        if (!f.background_.is_zero() || !f.pieces_.empty())
            fail(ErrorKind::argument, "star_algebra", "support of a function with nonzero background is infinite");
        std::vector<GroupElement> out;
        for (const auto& [x, v] : f.points_) out.push_back(x);
        return out;
    }

    /// Sorted, deduplicated breakpoints of the given functions (real line).
    std::vector<GroupElement> breakpoints(const std::vector<const FiniteFunction*>& fs) const {
        std::vector<GroupElement> pts;
        for (const auto* f : fs)
            for (const auto& p : f->pieces_) {
                pts.push_back(p.lo);
                pts.push_back(p.hi);
            }
        sort_unique(pts);
        return pts;
    }

    gamma::Order compare(const GroupElement& a, const GroupElement& b) const {
        return gamma::compare_real(desc_, a, b, depth_);
    }

    void sort_unique(std::vector<GroupElement>& pts) const {
        std::sort(pts.begin(), pts.end(), [&](const GroupElement& a, const GroupElement& b) {
            return compare(a, b) == gamma::Order::less;
        });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }

private:
    template <class Op>
    FiniteFunction combine(const FiniteFunction& a, const FiniteFunction& b, Op op) const {
        FiniteFunction r;
        r.background_ = op(a.background_, b.background_);
        if (desc_.is_discrete()) {
            auto ia = a.points_.begin();
            auto ib = b.points_.begin();
            while (ia != a.points_.end() || ib != b.points_.end()) {
                Scalar v;
                const GroupElement* key;
                if (ib == b.points_.end() || (ia != a.points_.end() && ia->first < ib->first)) {
                    key = &ia->first;
                    v = op(ia->second, b.background_);
                    ++ia;
                } else if (ia == a.points_.end() || ib->first < ia->first) {
                    key = &ib->first;
                    v = op(a.background_, ib->second);
                    ++ib;
                } else {
                    key = &ia->first;
                    v = op(ia->second, ib->second);
                    ++ia;
                    ++ib;
                }
                if (v != r.background_) r.points_.emplace_hint(r.points_.end(), *key, std::move(v));
            }
            return r;
        }
        auto pts = breakpoints({&a, &b});
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            Scalar va = value_on(a, pts[k]), vb = value_on(b, pts[k]);
            r.pieces_.push_back(Piece{pts[k], pts[k + 1], op(va, vb)});
        }
        tidy(r);
        return r;
    }

    /// Value of a real step function on the elementary interval starting at x.
    Scalar value_on(const FiniteFunction& f, const GroupElement& x) const {
        for (const auto& p : f.pieces_) {
            if (compare(x, p.lo) == gamma::Order::less) break;
            if (compare(x, p.hi) == gamma::Order::less) return p.value;
        }
        return f.background_;
    }

    /// Drops background-valued pieces and merges adjacent pieces with equal values.
    void tidy(FiniteFunction& f) const {
        std::vector<Piece> out;
        for (auto& p : f.pieces_) {
            if (p.value == f.background_) continue;
            if (!out.empty() && out.back().value == p.value && out.back().hi == p.lo) {
                out.back().hi = p.hi;
                continue;
            }
            out.push_back(std::move(p));
        }
        f.pieces_ = std::move(out);
    }

    GroupDescriptor desc_;
    unsigned depth_;
};

} // namespace quasifree

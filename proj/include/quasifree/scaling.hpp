#pragma once

// Scaling elements for discrete groups whose weight semigroup is the whole group:
// pairwise orthogonal words with prescribed weights, a partition of the unit on a
// finite set X, and x = sum_k S_{mu_k} f_k^{1/2} with its defining identities.

#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "function.hpp"
#include "gamma.hpp"
#include "semigroup.hpp"
#include "words.hpp"

namespace quasifree {

struct PartitionPair {
    GroupElement point;
    FiniteFunction f;
    Word mu;
};

struct PartitionData {
    std::vector<GroupElement> X;
    GroupElement gamma0;
    std::vector<PartitionPair> pairs;
    bool orthogonal_words = false;   // (i)
    bool unit_on_X = false;          // (ii)
    bool fractional_at_gamma0 = false; // (iii)
    bool supports_in_X = false;      // (iv)
    bool passed() const { return orthogonal_words && unit_on_X && fractional_at_gamma0 && supports_in_X; }
};

struct ScalingReport {
    PartitionData partition;
    AlgebraElement x;
    AlgebraElement x_star_x;
    AlgebraElement x_x_star;
    bool x_star_x_is_sum = false;  // x*x = sum_k f_k
    bool absorbs = false;          // (x*x)(xx*) = xx*
    bool not_normal = false;       // x*x != xx*
    bool passed() const { return partition.passed() && x_star_x_is_sum && absorbs && not_normal; }
};

/// The default value of f at gamma0; its square root 1/2 keeps every scalar rational.
inline const Scalar& gamma0_weight() {
    static const Scalar quarter(make_rational(1, 4));
    return quarter;
}

inline PartitionData partition_data(const Algebra& alg, const semigroup::SemigroupAnalysis& analysis,
                                    std::vector<GroupElement> X, GroupElement gamma0) {
    const auto& desc = alg.descriptor();
    const auto& fs = alg.functions();
    if (!desc.is_discrete())
        fail(ErrorKind::feature, "scaling_constructor", "scaling elements are constructed for discrete groups only");
    for (auto& g : X) g = gamma::normalize(desc, g);
    gamma0 = gamma::normalize(desc, gamma0);
    std::sort(X.begin(), X.end());
    X.erase(std::unique(X.begin(), X.end()), X.end());
    if (!std::binary_search(X.begin(), X.end(), gamma::zero(desc)))
        fail(ErrorKind::precondition, "scaling_constructor", "X must contain 0");
    if (std::binary_search(X.begin(), X.end(), gamma0))
        fail(ErrorKind::precondition, "scaling_constructor", "gamma0 must lie outside X",
             "gamma0 = " + gamma::render(desc, gamma0));
    auto closure = semigroup::closure_equals_gamma(analysis);
    if (!closure.verdict)
        fail(ErrorKind::precondition, "scaling_constructor", "the weight semigroup is not the whole group",
             closure.counterexample ? "not in the closure: " + gamma::render(desc, *closure.counterexample) : "");

    PartitionData data;
    data.X = X;
    data.gamma0 = gamma0;
    std::vector<GroupElement> points = X;
    points.push_back(gamma0);
    std::vector<WordTarget> targets;
    for (const auto& x : points) targets.push_back(ExactTarget{{gamma::negate(desc, x)}});
    auto words = orthogonal_family(analysis, targets);
    for (std::size_t k = 0; k < points.size(); ++k) {
        Scalar value = k + 1 == points.size() ? gamma0_weight() : Scalar(1);
        data.pairs.push_back(PartitionPair{points[k], fs.indicator({points[k]}, value), words[k]});
    }

    data.orthogonal_words = true;
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b)
            data.orthogonal_words = data.orthogonal_words && orthogonal(words[a], words[b]);
    FiniteFunction total = fs.zero();
    for (const auto& pr : data.pairs) total = fs.add(total, pr.f);
    data.unit_on_X = true;
    for (const auto& x : X) data.unit_on_X = data.unit_on_X && fs.evaluate(total, x) == Scalar(1);
    Scalar at0 = fs.evaluate(total, gamma0);
    data.fractional_at_gamma0 = at0 != Scalar(0) && at0 != Scalar(1);
    data.supports_in_X = true;
    for (const auto& pr : data.pairs) {
        auto moved = fs.shift(pr.f, gamma::negate(desc, alg.weight(pr.mu)));
        for (const auto& g : fs.support_points(moved))
            data.supports_in_X = data.supports_in_X && std::binary_search(X.begin(), X.end(), g);
    }
    if (!data.passed())
        fail(ErrorKind::internal, "scaling_constructor", "partition conditions failed on the constructed data");
    return data;
}

inline ScalingReport scaling_element(const Algebra& alg, const semigroup::SemigroupAnalysis& analysis,
                                     std::vector<GroupElement> X, GroupElement gamma0) {
    const auto& fs = alg.functions();
    ScalingReport r;
    r.partition = partition_data(alg, analysis, std::move(X), std::move(gamma0));
    r.x = alg.zero();
    AlgebraElement sum_f = alg.zero();
    for (const auto& pr : r.partition.pairs) {
        auto root = fs.map_values(pr.f, [&](const Scalar& v) {
            auto s = exact_sqrt(v);
            if (!s)
                fail(ErrorKind::construction, "scaling_constructor", "value is not the square of a rational",
                     v.str());
            return *s;
        });
        r.x = alg.add(r.x, alg.multiply(alg.S(pr.mu), alg.function(root)));
        sum_f = alg.add(sum_f, alg.function(pr.f));
    }
    AlgebraElement xs = alg.adjoint(r.x);
    r.x_star_x = alg.multiply(xs, r.x);
    r.x_x_star = alg.multiply(r.x, xs);
    r.x_star_x_is_sum = r.x_star_x == sum_f;
    r.absorbs = alg.multiply(r.x_star_x, r.x_x_star) == r.x_x_star;
    r.not_normal = !(r.x_star_x == r.x_x_star);
    if (!r.passed()) fail(ErrorKind::internal, "scaling_constructor", "scaling identities failed");
    return r;
}

} // namespace quasifree

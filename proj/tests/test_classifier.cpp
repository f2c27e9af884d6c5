#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quasifree/classifier.hpp"
#include "quasifree/expression.hpp"

using namespace quasifree;

namespace {

GroupDescriptor Z() { return GroupDescriptor::discrete(1, {}); }

OmegaData weights(const GroupDescriptor& d, std::vector<std::vector<long long>> ws,
                  AlphabetMode mode = AlphabetMode::finite) {
    std::vector<GroupElement> out;
    for (const auto& w : ws) out.push_back(gamma::from_integers(d, w));
    return make_omega(d, out, mode);
}

GroupDescriptor sqrt2_line() {
    return GroupDescriptor::real_line({BasisElement{"1", 1, 1, {}},
                                       BasisElement{"sqrt2", make_rational(1414213, 1000000),
                                                    make_rational(1414214, 1000000), {-2, 0, 1}}});
}

OmegaData real_weights(const GroupDescriptor& d, std::vector<std::pair<Rational, Rational>> ws) {
    std::vector<GroupElement> out;
    for (const auto& [a, b] : ws) out.push_back(gamma::normalize(d, {{a, b}}));
    return make_omega(d, out);
}

} // namespace

TEST(Classify, MixedSignsOverZIsPurelyInfinite) {
    auto v = classify(Z(), weights(Z(), {{1}, {-1}}));
    EXPECT_TRUE(v.simple);
    EXPECT_EQ(v.purely_infinite, true);
    EXPECT_EQ(v.af_embeddable, Tri::no);
    EXPECT_EQ(v.af_itself, false);
    EXPECT_EQ(v.stably_finite, Tri::no);
    ASSERT_TRUE(v.infinite_projection.has_value());
    EXPECT_TRUE(v.infinite_projection->passed());
}

TEST(Classify, PositiveWeightsOverZAreAF) {
    auto v = classify(Z(), weights(Z(), {{1}, {2}}));
    EXPECT_TRUE(v.simple);
    EXPECT_EQ(v.purely_infinite, false);
    EXPECT_EQ(v.af_embeddable, Tri::yes);
    EXPECT_EQ(v.af_itself, true);
    EXPECT_EQ(v.stably_finite, Tri::yes);
    EXPECT_FALSE(v.infinite_projection.has_value());
    EXPECT_TRUE(v.condition.holds);
}

TEST(Classify, NonSimpleWhenAWeightLatticeIsProper) {
    // omega = (2, 4): -omega_i closures stay inside 2Z.
    auto v = classify(Z(), weights(Z(), {{2}, {4}}));
    EXPECT_FALSE(v.simple);
    EXPECT_EQ(v.af_embeddable, Tri::yes);
    for (const auto& c : v.simplicity.per_index) {
        EXPECT_FALSE(c.verdict);
        ASSERT_TRUE(c.counterexample.has_value());
    }
}

TEST(Classify, FiniteGroupsAreNeverAF) {
    auto d = GroupDescriptor::discrete(0, {3});
    auto v = classify(d, weights(d, {{1}, {1}}));
    EXPECT_TRUE(v.simple);
    EXPECT_EQ(v.purely_infinite, true);
    EXPECT_EQ(v.af_embeddable, Tri::no);
    ASSERT_TRUE(v.infinite_projection.has_value());
    EXPECT_EQ(total(*&v.zero_word->counts), 3u);
}

TEST(Classify, InfiniteProjectionWitnessChecksAreExact) {
    auto d = GroupDescriptor::discrete(1, {2});
    Algebra alg(d, weights(d, {{1, 1}, {-1, 1}, {2, 0}}));
    semigroup::SemigroupAnalysis an(d, alg.omega());
    auto w = infinite_projection_witness(alg, an);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(alg.weight(w->mu), gamma::zero(d));
    auto uu = alg.multiply(w->u, alg.adjoint(w->u));
    EXPECT_EQ(alg.multiply(alg.adjoint(w->u), w->u), w->chi);
    EXPECT_EQ(alg.multiply(w->chi, uu), uu);
    EXPECT_NE(uu, w->chi);
    EXPECT_EQ(render(alg, w->u), render(alg, alg.multiply(alg.S(w->mu), w->chi)));
}

TEST(Classify, RealLineVerdicts) {
    auto d = sqrt2_line();
    auto v = classify(d, real_weights(d, {{1, 0}, {0, 1}}));
    EXPECT_EQ(v.af_embeddable, Tri::yes);
    EXPECT_EQ(v.stably_finite, Tri::yes);
    EXPECT_EQ(v.purely_infinite, false);

    v = classify(d, real_weights(d, {{1, 0}, {0, -1}}));
    EXPECT_EQ(v.purely_infinite, true);
    EXPECT_TRUE(v.simple);
    EXPECT_EQ(v.af_embeddable, Tri::no);

    v = classify(d, real_weights(d, {{0, 0}, {1, 0}}));
    EXPECT_EQ(v.af_embeddable, Tri::open);
    EXPECT_EQ(v.stably_finite, Tri::yes);
    EXPECT_FALSE(v.af_itself.has_value());

    // Rank-one lattice with both signs: not dense, yet zero-sum words exist.
    v = classify(d, real_weights(d, {{2, 0}, {-3, 0}}));
    EXPECT_EQ(v.purely_infinite, false);
    EXPECT_EQ(v.af_embeddable, Tri::no);
    EXPECT_EQ(v.stably_finite, Tri::no);
}

TEST(Classify, InfiniteAlphabetSimpleIffPurelyInfinite) {
    for (auto ws : {std::vector<std::vector<long long>>{{1}, {-1}}, {{2}, {3}}, {{2}, {-4}}, {{0}, {1}}}) {
        auto v = classify(Z(), weights(Z(), ws, AlphabetMode::infinite_repeating));
        EXPECT_EQ(v.simple, v.purely_infinite.value());
        EXPECT_TRUE(v.infinite_alphabet);
        EXPECT_FALSE(v.af_itself.has_value());
    }
    auto pos = classify(Z(), weights(Z(), {{2}, {3}}, AlphabetMode::infinite_repeating));
    EXPECT_EQ(pos.af_embeddable, Tri::yes);
}

TEST(Classify, AppendingAWeightNeverLosesPureInfiniteness) {
    auto z2 = GroupDescriptor::discrete(2, {});
    std::vector<std::vector<long long>> base{{1, 0}, {-1, 1}, {0, -1}};
    auto v = classify(z2, weights(z2, base));
    ASSERT_EQ(v.purely_infinite, true);
    for (long long a = -2; a <= 2; ++a)
        for (long long b = -2; b <= 2; ++b) {
            auto more = base;
            more.push_back({a, b});
            EXPECT_EQ(classify(z2, weights(z2, more)).purely_infinite, true);
        }
}

TEST(Classify, ConditionMatchesBruteForceNegatedGenerators) {
    oracle::Group ref{1, {}};
    for (long a = -3; a <= 3; ++a)
        for (long b = a; b <= 3; ++b) {
            auto v = classify(Z(), weights(Z(), {{a}, {b}}));
            auto reach = oracle::reachable(ref, {{a}, {b}}, 12, 12);
            reach[{0}] = 0; // empty word
            bool cond = !reach.count({-a}) && !reach.count({-b});
            EXPECT_EQ(v.condition.holds, cond) << a << "," << b;
        }
}

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quasifree/af_builder.hpp"

using namespace quasifree;

namespace {

GroupDescriptor Z() { return GroupDescriptor::discrete(1, {}); }

struct Setup {
    Algebra alg;
    semigroup::SemigroupAnalysis analysis;
};

Setup setup(const GroupDescriptor& d, std::vector<std::vector<long long>> ws, AlphabetMode mode = AlphabetMode::finite) {
    std::vector<GroupElement> out;
    for (const auto& w : ws) out.push_back(gamma::from_integers(d, w));
    auto omega = make_omega(d, out, mode);
    return Setup{Algebra(d, omega), semigroup::SemigroupAnalysis(d, omega)};
}

RegionFamily points(const Algebra& alg, std::vector<long long> pts) {
    std::vector<FiniteFunction> regions;
    for (auto p : pts) regions.push_back(alg.functions().indicator({gamma::from_integers(alg.descriptor(), {p})}));
    return make_region_family(alg.functions(), regions);
}

AlgebraElement P(const Algebra& alg, const std::string& s) { return parse_expression(alg, s); }

/// Largest word length (up to max_len) whose weight lies in F - F, by enumeration.
std::size_t brute_shift_bound(const std::vector<long>& weights, const std::vector<long>& F, std::size_t max_len) {
    std::set<long> diffs;
    for (long a : F)
        for (long b : F) diffs.insert(a - b);
    oracle::RefAlgebra ref{static_cast<int>(weights.size()), weights};
    std::size_t K = 0;
    for (std::size_t len = 1; len <= max_len; ++len)
        for (const auto& w : ref.words(len))
            if (diffs.count(ref.weight(w))) K = len;
    return K;
}

} // namespace

TEST(ShiftBound, Examples) {
    auto s = setup(Z(), {{1}, {2}});
    EXPECT_EQ(shift_bound(s.alg, s.analysis, points(s.alg, {0})), 0u);
    EXPECT_EQ(shift_bound(s.alg, s.analysis, points(s.alg, {0, 1})), 1u);
    EXPECT_EQ(shift_bound(s.alg, s.analysis, points(s.alg, {0, 1, 2})), 2u);
}

TEST(ShiftBound, AgreesWithEnumeration) {
    for (std::vector<long> ws : {std::vector<long>{1, 2}, {2, 3}, {1, 1}, {3, 1}}) {
        auto s = setup(Z(), {{ws[0]}, {ws[1]}});
        for (std::vector<long long> F : {std::vector<long long>{0}, {0, 2}, {-1, 3}, {0, 1, 4}}) {
            std::vector<long> Fl(F.begin(), F.end());
            EXPECT_EQ(shift_bound(s.alg, s.analysis, points(s.alg, F)), brute_shift_bound(ws, Fl, 8));
        }
    }
}

TEST(ShiftBound, ZeroWordIsAConstructionError) {
    auto d = GroupDescriptor::discrete(0, {2});
    auto s = setup(d, {{1}, {1}});
    try {
        shift_bound(s.alg, s.analysis, points(s.alg, {0}));
        FAIL() << "expected a construction error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::construction);
        EXPECT_NE(e.query().find("[1,1]"), std::string::npos) << e.query();
    }
}

TEST(BuildQ, Examples) {
    auto s = setup(Z(), {{1}, {2}});
    auto p = P(s.alg, "chi{0}");
    EXPECT_EQ(build_q(s.alg, p, 0), p);
    auto p2 = P(s.alg, "chi{0,1}");
    auto q = build_q(s.alg, p2, 1);
    EXPECT_EQ(q, P(s.alg, "chi{0,1} - S[1]*chi{0}*S*[1]"));
    EXPECT_TRUE(s.alg.is_projection(q));
    EXPECT_EQ(s.alg.multiply(q, p2), q);
}

TEST(Decompose, SinglePoint) {
    auto s = setup(Z(), {{1}, {2}});
    auto r = decompose(s.alg, s.analysis, points(s.alg, {0}), 2);
    EXPECT_EQ(r.K, 0u);
    ASSERT_EQ(r.summands.size(), 1u);
    EXPECT_EQ(r.summands[0].tau, std::vector<std::size_t>{1});
    EXPECT_EQ(r.summands[0].q_tau, P(s.alg, "chi{0}"));
    bool found = false;
    for (const auto& c : r.checks)
        if (c.name.find("matrix-unit") != std::string::npos) {
            EXPECT_EQ(c.count, 49u);
            found = true;
        }
    EXPECT_TRUE(found);
    EXPECT_TRUE(r.passed());
}

TEST(Decompose, TwoPoints) {
    auto s = setup(Z(), {{1}, {2}});
    auto r = decompose(s.alg, s.analysis, points(s.alg, {0, 1}), 2);
    EXPECT_EQ(r.K, 1u);
    ASSERT_EQ(r.summands.size(), 2u);
    std::map<std::vector<std::size_t>, AlgebraElement> by_tau;
    for (const auto& sm : r.summands) by_tau.emplace(sm.tau, sm.q_tau);
    ASSERT_TRUE(by_tau.count({1, 2, 0}));
    ASSERT_TRUE(by_tau.count({2, 0, 0}));
    EXPECT_EQ(by_tau.at({1, 2, 0}), P(s.alg, "chi{0}"));
    EXPECT_EQ(by_tau.at({2, 0, 0}), P(s.alg, "chi{1} - S[1]*chi{0}*S*[1]"));
    EXPECT_TRUE(r.passed());
}

TEST(Decompose, ThreePointsDefaultTruncation) {
    auto s = setup(Z(), {{1}, {2}});
    auto r = decompose(s.alg, s.analysis, points(s.alg, {0, 1, 2}));
    EXPECT_EQ(r.K, 2u);
    EXPECT_EQ(r.truncation, 3u);
    EXPECT_TRUE(r.passed());
    // q <= p and q <= 1 - rho_k(p).
    EXPECT_EQ(s.alg.multiply(r.q, r.p), r.q);
    for (std::size_t k = 1; k <= r.K; ++k) EXPECT_TRUE(s.alg.multiply(r.q, s.alg.rho(r.p, k)).is_zero());
}

TEST(Decompose, OverlappingRegionsSplitIntoAtoms) {
    auto s = setup(Z(), {{1}, {3}});
    std::vector<FiniteFunction> regions{
        s.alg.functions().indicator({gamma::from_integers(Z(), {0}), gamma::from_integers(Z(), {1})}),
        s.alg.functions().indicator({gamma::from_integers(Z(), {1}), gamma::from_integers(Z(), {2})})};
    auto rf = make_region_family(s.alg.functions(), regions);
    EXPECT_EQ(rf.atoms.size(), 3u);
    auto r = decompose(s.alg, s.analysis, rf);
    EXPECT_TRUE(r.passed());
}

TEST(Decompose, RealLineIntervals) {
    auto d = GroupDescriptor::real_line({BasisElement{"1", 1, 1, {}},
                                         BasisElement{"r2", make_rational(1414, 1000), make_rational(1415, 1000), {-2, 0, 1}}});
    auto w = [&](Rational a, Rational b) { return gamma::normalize(d, {{a, b}}); };
    auto omega = make_omega(d, {w(1, 0), w(0, 1)});
    Algebra alg(d, omega);
    semigroup::SemigroupAnalysis an(d, omega);
    auto rf = make_region_family(alg.functions(), {alg.functions().interval(w(0, 0), w(0, 1)),
                                                   alg.functions().interval(w(0, 1), w(2, 0))});
    auto r = decompose(alg, an, rf);
    // F - F = (-2, 2): (1) and (2) qualify; (1,1) lands on the open endpoint 2.
    EXPECT_EQ(r.K, 1u);
    EXPECT_TRUE(r.passed());

    auto negative = make_omega(d, {w(-1, 0), w(0, -1)});
    Algebra alg_neg(d, negative);
    semigroup::SemigroupAnalysis an_neg(d, negative);
    EXPECT_EQ(shift_bound(alg_neg, an_neg, rf), 1u);
}

TEST(Decompose, InfiniteAlphabetMatchesFiniteRun) {
    auto fin = setup(Z(), {{1}, {2}});
    auto inf = setup(Z(), {{1}, {2}}, AlphabetMode::infinite_repeating);
    auto a = decompose(fin.alg, fin.analysis, points(fin.alg, {0}), 2);
    auto b = decompose(inf.alg, inf.analysis, points(inf.alg, {0}), 2);
    EXPECT_TRUE(b.passed());
    EXPECT_EQ(a.summands.size(), b.summands.size());
    EXPECT_EQ(a.K, b.K);
}

TEST(Decompose, DotHasOneNodePerSummand) {
    auto s = setup(Z(), {{1}, {2}});
    auto r = decompose(s.alg, s.analysis, points(s.alg, {0, 1}));
    auto dot = to_dot(s.alg, r);
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    std::size_t nodes = 0;
    for (std::size_t pos = 0; (pos = dot.find("[label=", pos)) != std::string::npos; ++pos) ++nodes;
    EXPECT_EQ(nodes, r.summands.size());
}

TEST(Regions, RejectNonIndicators) {
    auto s = setup(Z(), {{1}, {2}});
    EXPECT_THROW(make_region_family(s.alg.functions(), {s.alg.functions().indicator({gamma::zero(Z())}, Scalar(2))}),
                 Error);
    EXPECT_THROW(make_region_family(s.alg.functions(), {}), Error);
}

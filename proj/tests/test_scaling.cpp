#include <gtest/gtest.h>

#include "quasifree/expression.hpp"
#include "quasifree/scaling.hpp"

using namespace quasifree;

namespace {

struct Setup {
    Algebra alg;
    semigroup::SemigroupAnalysis analysis;
};

Setup setup(const GroupDescriptor& d, std::vector<std::vector<long long>> ws) {
    std::vector<GroupElement> out;
    for (const auto& w : ws) out.push_back(gamma::from_integers(d, w));
    auto omega = make_omega(d, out);
    return Setup{Algebra(d, omega), semigroup::SemigroupAnalysis(d, omega)};
}

GroupElement at(const GroupDescriptor& d, std::vector<long long> v) { return gamma::from_integers(d, v); }

} // namespace

TEST(Partition, IntegersWithMixedSigns) {
    auto z = GroupDescriptor::discrete(1, {});
    auto s = setup(z, {{1}, {-1}});
    auto data = partition_data(s.alg, s.analysis, {at(z, {0})}, at(z, {1}));
    ASSERT_EQ(data.pairs.size(), 2u);
    EXPECT_EQ(data.pairs[0].mu, (Word{1, 2}));
    EXPECT_EQ(data.pairs[1].mu, Word{2});
    EXPECT_EQ(data.pairs[0].f, s.alg.functions().indicator({at(z, {0})}));
    EXPECT_EQ(data.pairs[1].f, s.alg.functions().indicator({at(z, {1})}, gamma0_weight()));
    EXPECT_TRUE(data.passed());
    for (const auto& p : data.pairs)
        EXPECT_EQ(gamma::add(z, p.point, s.alg.weight(p.mu)), gamma::zero(z));
}

TEST(Partition, CyclicGroupOfOrderThree) {
    auto d = GroupDescriptor::discrete(0, {3});
    auto s = setup(d, {{1}, {1}});
    auto data = partition_data(s.alg, s.analysis, {at(d, {0})}, at(d, {1}));
    EXPECT_TRUE(data.passed());
    EXPECT_TRUE(orthogonal(data.pairs[0].mu, data.pairs[1].mu));
    EXPECT_EQ(s.alg.weight(data.pairs[0].mu), at(d, {0}));
    EXPECT_EQ(s.alg.weight(data.pairs[1].mu), at(d, {2}));
}

TEST(Partition, LargerSetInZ2) {
    auto d = GroupDescriptor::discrete(2, {});
    auto s = setup(d, {{1, 0}, {-1, 1}, {0, -1}});
    std::vector<GroupElement> X{at(d, {0, 0}), at(d, {1, 0}), at(d, {0, 1}), at(d, {-1, -1})};
    auto r = scaling_element(s.alg, s.analysis, X, at(d, {2, 2}));
    EXPECT_EQ(r.partition.pairs.size(), 5u);
    EXPECT_TRUE(r.passed());
}

TEST(Partition, Preconditions) {
    auto z = GroupDescriptor::discrete(1, {});
    auto s = setup(z, {{1}, {-1}});
    auto expect_precondition = [](auto&& call) {
        try {
            call();
            FAIL() << "expected a precondition error";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::precondition);
        }
    };
    expect_precondition([&] { partition_data(s.alg, s.analysis, {at(z, {1})}, at(z, {2})); });
    expect_precondition([&] { partition_data(s.alg, s.analysis, {at(z, {0}), at(z, {1})}, at(z, {1})); });

    auto pos = setup(z, {{1}, {2}});
    try {
        partition_data(pos.alg, pos.analysis, {at(z, {0})}, at(z, {1}));
        FAIL() << "expected a precondition error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::precondition);
        EXPECT_FALSE(e.query().empty());
    }
}

TEST(ScalingElement, IntegersWithMixedSigns) {
    auto z = GroupDescriptor::discrete(1, {});
    auto s = setup(z, {{1}, {-1}});
    auto r = scaling_element(s.alg, s.analysis, {at(z, {0})}, at(z, {1}));
    auto P = [&](const char* t) { return parse_expression(s.alg, t); };
    EXPECT_EQ(r.x, P("S[1,2]*chi{0} + (1/2)*S[2]*chi{1}"));
    EXPECT_EQ(r.x_star_x, P("chi{0} + (1/4)*chi{1}"));
    EXPECT_EQ(r.x_x_star, P("S[1,2]*chi{0}*S*[1,2] + (1/4)*S[2]*chi{1}*S*[2]"));
    EXPECT_TRUE(r.absorbs);
    EXPECT_TRUE(r.not_normal);
    EXPECT_TRUE(r.passed());
}

TEST(ScalingElement, CyclicGroupOfOrderTwo) {
    auto d = GroupDescriptor::discrete(0, {2});
    auto s = setup(d, {{1}, {1}});
    auto r = scaling_element(s.alg, s.analysis, {at(d, {0})}, at(d, {1}));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(s.alg.multiply(r.x_star_x, r.x_x_star), r.x_x_star);
    EXPECT_NE(r.x_star_x, r.x_x_star);
}

TEST(ScalingElement, DeterministicOutput) {
    auto z = GroupDescriptor::discrete(1, {});
    auto s = setup(z, {{2}, {-3}});
    auto a = scaling_element(s.alg, s.analysis, {at(z, {0}), at(z, {-1}), at(z, {4})}, at(z, {7}));
    auto b = scaling_element(s.alg, s.analysis, {at(z, {4}), at(z, {0}), at(z, {-1})}, at(z, {7}));
    EXPECT_EQ(a.x, b.x);
    EXPECT_TRUE(a.passed());
}

TEST(ScalingElement, RealLineIsUnsupported) {
    auto d = GroupDescriptor::real_line({BasisElement{"1", 1, 1, {}}});
    auto omega = make_omega(d, {gamma::normalize(d, {{1}}), gamma::normalize(d, {{-1}})});
    Algebra alg(d, omega);
    semigroup::SemigroupAnalysis an(d, omega);
    try {
        scaling_element(alg, an, {gamma::zero(d)}, gamma::normalize(d, {{1}}));
        FAIL() << "expected a feature error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::feature);
    }
}

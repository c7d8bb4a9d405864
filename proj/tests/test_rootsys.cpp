#include <gtest/gtest.h>

#include "pbwdeg/rootsys.hpp"
#include "pbwdeg/weyl_dim.hpp"

using namespace pbwdeg;

namespace {

const char *kTypes[] = {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"};

int classical_count(const CartanType &ct) {
    const int n = ct.rank;
    switch (ct.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::G: return 6;
    }
    return -1;
}

} // namespace

TEST(RootSystem, PositiveRootCountsMatchClassicalFormulas) {
    for (const char *t : kTypes) {
        const CartanType ct = CartanType::parse(t);
        const RootSystemData rs = build_root_system(ct);
        EXPECT_EQ(rs.N, classical_count(ct)) << t;
        EXPECT_EQ(static_cast<int>(rs.positive_roots.size()), rs.N) << t;
    }
}

TEST(RootSystem, HeightsAreCoefficientSumsAndNondecreasing) {
    for (const char *t : kTypes) {
        const RootSystemData rs = build_root_system(CartanType::parse(t));
        int simple = 0;
        for (int b = 0; b < rs.N; ++b) {
            std::int64_t s = 0;
            for (auto c : rs.positive_roots[b])
                s += c;
            EXPECT_EQ(rs.heights[b], s) << t;
            if (b > 0)
                EXPECT_LE(rs.heights[b - 1], rs.heights[b]) << t;
            simple += rs.heights[b] == 1;
        }
        EXPECT_EQ(simple, rs.rank()) << t;
    }
}

TEST(RootSystem, SimpleRootsComeFirstInIndexOrder) {
    const RootSystemData rs = build_root_system(CartanType::parse("B3"));
    for (int i = 0; i < rs.rank(); ++i) {
        std::vector<std::int64_t> e(rs.rank(), 0);
        e[i] = 1;
        EXPECT_EQ(rs.positive_roots[i], e);
        EXPECT_EQ(rs.root_index(e), i);
    }
}

TEST(RootSystem, A2AndG2Heights) {
    EXPECT_EQ(build_root_system(CartanType::parse("A2")).heights, (std::vector<int>{1, 1, 2}));
    EXPECT_EQ(build_root_system(CartanType::parse("G2")).heights, (std::vector<int>{1, 1, 2, 3, 4, 5}));
}

TEST(RootSystem, G2RootsAreClosedUnderSimpleReflections) {
    const RootSystemData rs = build_root_system(CartanType::parse("G2"));
    for (int b = 0; b < rs.N; ++b)
        for (int i = 0; i < 2; ++i) {
            auto r = rs.positive_roots[b];
            std::int64_t pairing = 0;
            for (int j = 0; j < 2; ++j)
                pairing += r[j] * rs.cartan[i][j];
            r[i] -= pairing;
            const bool negated_simple = b == i;
            if (!negated_simple)
                EXPECT_TRUE(rs.is_root(r)) << "s_" << i << " of root " << b;
        }
}

TEST(RootSystem, RootWeightsAreCartanColumnsForSimpleRoots) {
    const RootSystemData rs = build_root_system(CartanType::parse("C3"));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_EQ(rs.simple_root_weight(i)[j], rs.cartan[j][i]);
}

TEST(RootSystem, UnsupportedTypesAreRejected) {
    EXPECT_THROW(CartanType::parse("B4"), UnsupportedType);
    EXPECT_THROW(CartanType::parse("E6"), UnsupportedType);
    EXPECT_THROW(CartanType::parse("A"), UnsupportedType);
    EXPECT_THROW(CartanType::parse("Ax"), UnsupportedType);
    EXPECT_THROW(CartanType::parse("D5"), UnsupportedType);
}

TEST(RootSystem, ParseIsCaseInsensitive) {
    EXPECT_EQ(CartanType::parse("g2").name(), "G2");
    EXPECT_EQ(CartanType::parse("c3").name(), "C3");
}

TEST(StarWeight, DiagramFlipInTypeAAndIdentityElsewhere) {
    EXPECT_EQ(star_weight(build_root_system(CartanType::parse("A2")), Weight{1, 2}), (Weight{2, 1}));
    EXPECT_EQ(star_weight(build_root_system(CartanType::parse("C2")), Weight{3, 1}), (Weight{3, 1}));
    EXPECT_EQ(star_weight(build_root_system(CartanType::parse("A3")), Weight{1, 0, 2}), (Weight{2, 0, 1}));
    EXPECT_EQ(star_weight(build_root_system(CartanType::parse("D4")), Weight{1, 0, 2, 3}), (Weight{1, 0, 2, 3}));
}

TEST(StarWeight, IsAnInvolution) {
    for (const char *t : kTypes) {
        const RootSystemData rs = build_root_system(CartanType::parse(t));
        Weight w = Weight::zero(rs.rank());
        for (int i = 0; i < rs.rank(); ++i)
            w[i] = i + 1;
        EXPECT_EQ(star_weight(rs, star_weight(rs, w)), w) << t;
        EXPECT_EQ(w0_weight(rs, w0_weight(rs, w)), w) << t;
    }
}

TEST(StarWeight, RankMismatchThrows) {
    EXPECT_THROW(star_weight(build_root_system(CartanType::parse("A2")), Weight{1}), DimensionMismatch);
}

TEST(SplittingWeight, IsTwicePMinusOneRho) {
    EXPECT_EQ(splitting_weight(build_root_system(CartanType::parse("A1")), 2), (Weight{2}));
    EXPECT_EQ(splitting_weight(build_root_system(CartanType::parse("A2")), 3), (Weight{4, 4}));
    EXPECT_EQ(splitting_weight(build_root_system(CartanType::parse("G2")), 2), (Weight{2, 2}));
    EXPECT_THROW(splitting_weight(build_root_system(CartanType::parse("G2")), 4), NotPrime);
}

TEST(ParseWeight, AcceptsCommaListsAndRejectsGarbage) {
    EXPECT_EQ(parse_weight("1,0,2"), (Weight{1, 0, 2}));
    EXPECT_EQ(parse_weight(" 3 , 4 "), (Weight{3, 4}));
    EXPECT_THROW(parse_weight("1,,2"), InvalidArgument);
    EXPECT_THROW(parse_weight("1,a"), InvalidArgument);
    EXPECT_THROW(parse_weight(""), InvalidArgument);
}

TEST(WeylDim, KnownValues) {
    const RootSystemData a1 = build_root_system(CartanType::parse("A1"));
    for (int m = 0; m <= 10; ++m)
        EXPECT_EQ(weyl_dim(a1, Weight{m}), m + 1);
    const RootSystemData a2 = build_root_system(CartanType::parse("A2"));
    EXPECT_EQ(weyl_dim(a2, Weight{0, 0}), 1);
    EXPECT_EQ(weyl_dim(a2, Weight{1, 1}), 8);
    EXPECT_EQ(weyl_dim(a2, Weight{2, 2}), 27);
    EXPECT_EQ(weyl_dim(build_root_system(CartanType::parse("C2")), Weight{1, 1}), 16);
    EXPECT_EQ(weyl_dim(build_root_system(CartanType::parse("G2")), Weight{1, 0}), 7);
    EXPECT_EQ(weyl_dim(build_root_system(CartanType::parse("G2")), Weight{0, 1}), 14);
    EXPECT_EQ(weyl_dim(build_root_system(CartanType::parse("B3")), Weight{0, 0, 1}), 8);
    EXPECT_EQ(weyl_dim(build_root_system(CartanType::parse("D4")), Weight{0, 1, 0, 0}), 28);
    EXPECT_EQ(weyl_dim(build_root_system(CartanType::parse("D4")), Weight{2, 2, 2, 2}), 531441);
}

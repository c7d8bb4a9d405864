#include <gtest/gtest.h>

#include "dense_oracle.hpp"

using namespace pbwdeg;

namespace {

RootSystemData rs_of(const char *t) { return build_root_system(CartanType::parse(t)); }

} // namespace

TEST(Oracle, RootClosureMatchesCounts) {
    EXPECT_EQ(oracle::positive_roots(rs_of("G2").cartan).size(), 6u);
    EXPECT_EQ(oracle::positive_roots(rs_of("B3").cartan).size(), 9u);
    EXPECT_EQ(oracle::positive_roots(rs_of("D4").cartan).size(), 12u);
    EXPECT_EQ(oracle::positive_roots(rs_of("C3").cartan).size(), 9u);
}

TEST(Oracle, RankAndIntersection) {
    const std::vector<oracle::Vec> a{{1, 0, 0}, {0, 1, 0}};
    const std::vector<oracle::Vec> b{{1, 1, 0}, {0, 0, 1}};
    EXPECT_EQ(oracle::rank(a, 2), 2u);
    EXPECT_EQ(oracle::intersection_dim(a, b, 2), 1u);
    EXPECT_EQ(oracle::rank({{1, 1}, {1, 1}}, 3), 1u);
}

TEST(Oracle, A1HandComputedMap) {
    // phi(v) = v(x)v, phi(Fv) = Fv(x)v + v(x)Fv, phi(F^(2)v) = Fv(x)Fv
    const oracle::MapTable t = oracle::map_table(rs_of("A1"), {Weight{1}, Weight{1}}, 2);
    const std::vector<oracle::Row> want{{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 3, 3, 1}};
    EXPECT_EQ(t.rows, want);
    EXPECT_TRUE(t.strict);
}

TEST(Oracle, A1ModuleDimensions) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int m = 0; m <= 4; ++m)
            EXPECT_EQ(oracle::pbw_dims(rs_of("A1"), Weight{m}, p), std::vector<std::size_t>(m + 1, 1));
}

TEST(Oracle, ModuleDimensionsAreWeylDimensions) {
    for (auto [t, lam] : std::vector<std::pair<const char *, Weight>>{
             {"A2", {1, 1}}, {"B2", {1, 1}}, {"G2", {1, 0}}, {"C2", {2, 0}}, {"D4", {0, 0, 1, 1}}}) {
        const RootSystemData rs = rs_of(t);
        const auto d = oracle::pbw_dims(rs, lam, 2);
        EXPECT_EQ(Integer(std::accumulate(d.begin(), d.end(), std::size_t{0})), weyl_dim(rs, lam)) << t;
    }
}

TEST(Oracle, F0SmallCases) {
    EXPECT_TRUE(oracle::f0_nonzero(rs_of("A1"), 2));
    EXPECT_TRUE(oracle::f0_nonzero(rs_of("A1"), 3));
    EXPECT_TRUE(oracle::f0_nonzero(rs_of("A2"), 2));
}

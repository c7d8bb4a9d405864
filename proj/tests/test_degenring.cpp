#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "pbwdeg/degenring.hpp"

using namespace pbwdeg;

namespace {

RootSystemData rs_of(const char *t) { return build_root_system(CartanType::parse(t)); }

std::vector<oracle::Row> engine_rows(const std::vector<DegreeRow> &t) {
    std::vector<oracle::Row> out;
    for (const auto &r : t)
        out.push_back({r.n, r.dim_phi_Vn, r.dim_im_cap_Tn, r.gr_image});
    return out;
}

} // namespace

TEST(Comultiplication, A1TwoFoldImages) {
    const RootSystemData rs = rs_of("A1");
    const ComultiplicationMap m = comultiplication_map(rs, {Weight{1}, Weight{1}}, 2);
    EXPECT_EQ(m.source->dim(), 3u);
    EXPECT_EQ(m.tensor_dim, 4u);
    std::vector<std::size_t> support;
    for (std::size_t g = 0; g < 3; ++g)
        support.push_back(m.image(g).size());
    // v -> v(x)v, Fv -> Fv(x)v + v(x)Fv, F^(2)v -> Fv(x)Fv
    EXPECT_EQ(support, (std::vector<std::size_t>{1, 2, 1}));
}

TEST(MultReport, A1IsSurjective) {
    const MultReport r = check_mult_surjective(rs_of("A1"), Weight{1}, Weight{1}, 2);
    EXPECT_TRUE(r.injective_ungraded);
    EXPECT_TRUE(r.strict);
    EXPECT_TRUE(r.verdict_mult_surjective);
    EXPECT_EQ(r.dim_source, 3u);
}

TEST(MultReport, TrivialFactorIsUnitInclusion) {
    const RootSystemData rs = rs_of("A2");
    const MultReport r = check_mult_surjective(rs, Weight{0, 0}, Weight{1, 1}, 3);
    EXPECT_TRUE(r.verdict_mult_surjective);
    EXPECT_EQ(r.dim_source, 8u);
}

TEST(MultReport, A2FundamentalPairs) {
    const RootSystemData rs = rs_of("A2");
    for (long long p : {2, 3}) {
        const MultReport r = check_mult_surjective(rs, Weight{1, 0}, Weight{0, 1}, p);
        EXPECT_TRUE(r.verdict_mult_surjective) << p;
        EXPECT_EQ(r.rank_phi, 8u);
    }
}

TEST(MultReport, InvariantsOfTables) {
    const RootSystemData rs = rs_of("C2");
    const MultReport r = check_mult_surjective(rs, Weight{1, 0}, Weight{0, 1}, 2);
    std::size_t total = 0;
    for (std::size_t n = 0; n < r.table.size(); ++n) {
        if (n > 0) {
            EXPECT_LE(r.table[n - 1].dim_phi_Vn, r.table[n].dim_phi_Vn);
            EXPECT_LE(r.table[n - 1].dim_im_cap_Tn, r.table[n].dim_im_cap_Tn);
        }
        EXPECT_LE(r.table[n].dim_phi_Vn, r.table[n].dim_im_cap_Tn);
        total += r.table[n].gr_image;
    }
    EXPECT_EQ(r.table.front().dim_phi_Vn, r.table.front().dim_im_cap_Tn);
    EXPECT_EQ(r.table.back().dim_phi_Vn, r.table.back().dim_im_cap_Tn);
    EXPECT_EQ(total, weyl_dim_ll(rs, Weight{1, 1}));
}

TEST(MultReport, SymmetricInFactors) {
    for (const char *t : {"A2", "B2", "G2"}) {
        const RootSystemData rs = rs_of(t);
        const MultReport a = check_mult_surjective(rs, Weight{1, 0}, Weight{0, 1}, 2);
        const MultReport b = check_mult_surjective(rs, Weight{0, 1}, Weight{1, 0}, 2);
        EXPECT_EQ(a.verdict_mult_surjective, b.verdict_mult_surjective) << t;
        EXPECT_EQ(engine_rows(a.table), engine_rows(b.table)) << t;
    }
}

TEST(MultReport, TablesMatchDenseOracle) {
    struct Case {
        const char *type;
        Weight lam, mu;
        long long p;
    };
    const std::vector<Case> cases = {{"A1", {1}, {1}, 3},        {"A2", {1, 0}, {1, 0}, 2}, {"A2", {0, 1}, {1, 0}, 3},
                                     {"B2", {1, 0}, {0, 1}, 2},   {"C2", {0, 1}, {0, 1}, 2}, {"G2", {1, 0}, {1, 0}, 2},
                                     {"A3", {1, 0, 0}, {0, 0, 1}, 2}};
    for (const auto &c : cases) {
        const RootSystemData rs = rs_of(c.type);
        const MultReport r = check_mult_surjective(rs, c.lam, c.mu, c.p);
        const oracle::MapTable o = oracle::map_table(rs, {c.lam, c.mu}, static_cast<std::uint32_t>(c.p));
        EXPECT_EQ(engine_rows(r.table), o.rows) << c.type << " " << c.lam << c.mu << " p=" << c.p;
        EXPECT_EQ(r.rank_phi, o.rank_phi);
        EXPECT_EQ(r.strict, o.strict);
    }
}

TEST(MultReport, NoteTranslatesToStarWeights) {
    const MultReport r = check_mult_surjective(rs_of("A2"), Weight{1, 0}, Weight{1, 0}, 2);
    EXPECT_NE(r.note.find("H0a(0,1)"), std::string::npos) << r.note;
    EXPECT_NE(r.note.find("H0a(0,2)"), std::string::npos) << r.note;
}

TEST(MultReport, CeilingRefusal) {
    RingOptions opts;
    opts.ceiling = 5;
    EXPECT_THROW(check_mult_surjective(rs_of("A2"), Weight{1, 0}, Weight{0, 1}, 2, opts), SizeCeilingExceeded);
}

TEST(Generation, A1UpToThree) {
    const GenReport r = check_degree_one_generation(rs_of("A1"), Weight{1}, 2, 3);
    EXPECT_TRUE(r.generated);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.rows[0].gr_image_total, 3u);
    EXPECT_EQ(r.rows[1].gr_image_total, 4u);
}

TEST(Generation, ZeroWeightIsVacuouslyGenerated) {
    EXPECT_TRUE(check_degree_one_generation(rs_of("B2"), Weight{0, 0}, 3, 3).generated);
}

TEST(Generation, A2AdjointPairwise) {
    EXPECT_TRUE(check_degree_one_generation(rs_of("A2"), Weight{1, 1}, 2, 2).generated);
}

TEST(Generation, NMaxBelowTwoIsRejected) {
    EXPECT_THROW(check_degree_one_generation(rs_of("A1"), Weight{1}, 2, 1), InvalidArgument);
}

TEST(Hilbert, ProjectiveLine) {
    const HilbertReport h = hilbert_function(rs_of("A1"), Weight{1}, 3, 4);
    EXPECT_EQ(h.h, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
    EXPECT_EQ(h.weyl_dims, h.h);
}

TEST(Hilbert, FirstValueIsWeylDimension) {
    const RootSystemData rs = rs_of("B2");
    const HilbertReport h = hilbert_function(rs, Weight{1, 1}, 2, 1);
    EXPECT_EQ(h.h[1], 16u);
    EXPECT_EQ(h.lam_star, (Weight{1, 1}));
}

TEST(Hilbert, NFoldTablesMatchOracle) {
    const RootSystemData rs = rs_of("A2");
    const GenRow row = nfold_row(rs, Weight{1, 1}, 2, 2, RingOptions{});
    const oracle::MapTable o = oracle::map_table(rs, {Weight{1, 1}, Weight{1, 1}}, 2);
    EXPECT_EQ(engine_rows(row.table), o.rows);
    EXPECT_EQ(row.gr_image_total, o.gr_total);
}

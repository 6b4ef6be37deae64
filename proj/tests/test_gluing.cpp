#include <gtest/gtest.h>

#include <sftkit/builtin.hpp>
#include <sftkit/gluing.hpp>
#include <sftkit/robinson.hpp>

using namespace sftkit;
using namespace sftkit::gluing;

namespace {

Pattern cell(int s) { return Pattern(0, 0, 1, 1, s); }

Pattern row(const std::vector<int>& v) { return Pattern::from_rows({v}); }

// □ ■^n □
Pattern bar(int n) {
    std::vector<int> v(n + 2, 1);
    v.front() = v.back() = 0;
    return row(v);
}

}  // namespace

TEST(GluingSet, ChessBlackOnBlack) {
    auto s = gluing_set(builtin::chess(), cell(1), cell(1), 6, 2);
    std::set<Offset> want;
    for (int y = -6; y <= 6; ++y)
        for (int x = -6; x <= 6; ++x)
            if ((x + y) % 2 == 0 && (x || y)) want.insert({x, y});
    EXPECT_EQ(s, want);
}

TEST(GluingSet, FullShiftEverywhere) {
    auto s = gluing_set(builtin::trivial(), cell(0), cell(0), 4, 1);
    EXPECT_EQ(s.size(), 9u * 9u - 1);
}

TEST(GluingSet, EvenFarOffsets) {
    auto sft = builtin::even();
    for (auto& p : collect_blocks(sft, 2))
        for (auto& q : collect_blocks(sft, 2)) {
            auto s = gluing_set(sft, p, q, 6, 2);
            for (int y = -6; y <= 6; ++y)
                for (int x = -6; x <= 6; ++x)
                    if (norm_inf({x, y}) >= 3) EXPECT_TRUE(s.count({x, y}));
        }
}

TEST(GluingSet, Symmetry) {
    auto sft = builtin::linear();
    auto blocks = collect_blocks(sft, 2);
    for (std::size_t i = 0; i < blocks.size(); i += 3)
        for (std::size_t j = 0; j < blocks.size(); j += 5) {
            auto a = gluing_set(sft, blocks[i], blocks[j], 4, 1), b = gluing_set(sft, blocks[j], blocks[i], 4, 1);
            for (auto [x, y] : a) EXPECT_TRUE(b.count({-x, -y}));
            EXPECT_EQ(a.size(), b.size());
        }
}

TEST(GluingSet, MarginMonotone) {
    auto sft = builtin::linear();
    Pattern p = bar(4);
    std::set<Offset> prev = gluing_set(sft, p, p, 4, 0);
    for (int m = 1; m <= 2; ++m) {
        auto s = gluing_set(sft, p, p, 4, m);
        EXPECT_TRUE(std::includes(prev.begin(), prev.end(), s.begin(), s.end())) << m;
        prev = s;
    }
}

TEST(GluingSet, Inadmissible) {
    try {
        gluing_set(builtin::even(), row({1, 1}), cell(0), 2, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code, "Inadmissible");
    }
}

TEST(GapEstimate, EvenIsOneBlockGluing) {
    for (int n = 1; n <= 3; ++n) {
        auto rep = gap_estimate(builtin::even(), n, 2 * n + 2, 2, {default_threads()});
        ASSERT_TRUE(rep.min_uniform_gap) << n;
        EXPECT_EQ(*rep.min_uniform_gap, 1) << n;
        EXPECT_EQ(rep.class_hint, ClassHint::constant);
    }
}

TEST(GapEstimate, ChessNeverUniform) {
    auto rep = gap_estimate(builtin::chess(), 1, 6, 2);
    EXPECT_FALSE(rep.min_uniform_gap);
    EXPECT_EQ(rep.pair_count, 4u);
    EXPECT_EQ(to_json(rep)["min_uniform_gap"], nullptr);
}

TEST(GapEstimate, ClassFit) {
    EXPECT_EQ(fit_class({{1, 2}, {2, 2}, {3, 2}}).hint, ClassHint::constant);
    EXPECT_EQ(fit_class({{1, 1}, {2, 3}, {3, 5}, {4, 7}}).hint, ClassHint::linear);
    EXPECT_EQ(fit_class({{1, 0}, {2, 1}, {4, 2}, {8, 3}}).hint, ClassHint::logarithmic);
}

TEST(VerticalGap, LinearBars) {
    for (int n : {2, 4, 6}) {
        auto g = vertical_gap(builtin::linear(), bar(n), bar(n), 2 * n, 2);
        ASSERT_TRUE(g) << n;
        int want = (n + 1) / 2;
        EXPECT_LE(std::abs(*g - want), 1) << n << " gap " << *g;
    }
}

TEST(NetGluing, Chess) {
    auto w = net_gluing_witness(builtin::chess(), cell(1), cell(1), 6, 2);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->period, 2);
    EXPECT_EQ(w->anchor, Offset(0, 0));
}

TEST(NetGluing, FullShift) {
    auto w = net_gluing_witness(builtin::trivial(), cell(0), cell(0), 4, 0);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->period, 1);
    EXPECT_EQ(w->anchor, Offset(0, 0));
}

TEST(NetGluing, RobinsonFromSupertileOccurrences) {
    const Pattern& st6 = robinson::supertile(6, robinson::Quad::sw);
    const Pattern& p = robinson::supertile(1, robinson::Quad::sw);
    auto cert = occurrence_offsets(st6, p, p, 64);
    auto w = net_witness(cert, 64);
    ASSERT_TRUE(w);
    EXPECT_LE(w->period, 32 * 3);
    EXPECT_EQ(w->period, 8);
    EXPECT_TRUE(robinson::verify_rules(st6).empty());
}

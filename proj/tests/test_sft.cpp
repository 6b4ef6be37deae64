#include <gtest/gtest.h>

#include <sftkit/builtin.hpp>

using namespace sftkit;

namespace {

// Brute force over every filling of a w*h rectangle or torus.
BigInt brute_count(const SftDefinition& s, int w, int h, bool torus) {
    int n = w * h, a = static_cast<int>(s.size());
    std::vector<int> v(n, 0);
    BigInt count = 0;
    while (true) {
        Pattern p(0, 0, w, h);
        for (int i = 0; i < n; ++i) p.set(i % w, i / w, v[i]);
        bool ok = torus ? torus_violations(s, p).empty() : check_pattern(s, p).empty();
        if (ok) ++count;
        int k = 0;
        while (k < n && ++v[k] == a) v[k++] = 0;
        if (k == n) break;
    }
    return count;
}

Pattern cells(std::initializer_list<std::tuple<int, int, int>> cs) {
    Pattern p;
    for (auto [x, y, s] : cs) p.set(x, y, s);
    return p;
}

}  // namespace

TEST(CheckPattern, ChessHorizontalBlackPair) {
    auto s = builtin::chess();
    auto v = check_pattern(s, cells({{0, 0, 1}, {1, 0, 1}}));
    EXPECT_EQ(v.size(), 1u);
}

TEST(CheckPattern, EmptyPatternHasNoViolations) {
    EXPECT_TRUE(check_pattern(builtin::chess(), Pattern{}).empty());
}

TEST(CheckPattern, EvenAllWhite) { EXPECT_TRUE(check_pattern(builtin::even(), Pattern(0, 0, 3, 3, 0)).empty()); }

TEST(CheckPattern, UnknownSymbolThrows) {
    try {
        check_pattern(builtin::even(), cells({{0, 0, 7}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code, "UnknownSymbol");
    }
}

TEST(CheckPattern, PartialSupportSkipsIncompletePlacements) {
    auto s = builtin::delta();
    // The 2x2 pattern needs all four cells; three are not enough.
    EXPECT_TRUE(check_pattern(s, cells({{0, 1, 0}, {1, 1, 1}, {0, 0, 0}})).empty());
    EXPECT_EQ(check_pattern(s, cells({{0, 1, 0}, {1, 1, 1}, {0, 0, 0}, {1, 0, 0}})).size(), 1u);
}

TEST(Enumerate, FrozenCounts) {
    EXPECT_EQ(count_blocks(builtin::full_shift(2), 3), 512);
    EXPECT_EQ(count_blocks(builtin::chess(), 2), 2);
    EXPECT_EQ(count_blocks(builtin::delta(), 1), 2);
}

TEST(Enumerate, CollectMatchesCountAndIsAdmissible) {
    for (auto s : {builtin::even(), builtin::chess(), builtin::linear(), builtin::log_first_layer(), builtin::delta()}) {
        for (int n = 1; n <= 3; ++n) {
            auto blocks = collect_blocks(s, n);
            EXPECT_EQ(BigInt(blocks.size()), count_blocks(s, n)) << s.name << " n=" << n;
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                EXPECT_TRUE(check_pattern(s, blocks[i]).empty());
                if (i) EXPECT_FALSE(blocks[i] == blocks[i - 1]);
            }
        }
    }
}

TEST(Enumerate, CountMatchesBruteForce) {
    for (auto s : {builtin::even(), builtin::chess(), builtin::linear(), builtin::log_first_layer(), builtin::delta()})
        for (int w = 1; w <= 3; ++w)
            for (int h = 1; h <= 3; ++h)
                EXPECT_EQ(count_rectangles(s, w, h), brute_count(s, w, h, false)) << s.name << " " << w << "x" << h;
}

TEST(Enumerate, Submultiplicativity) {
    for (auto s : {builtin::even(), builtin::chess(), builtin::linear(), builtin::log_first_layer(), builtin::delta()})
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b)
                for (int c = 1; c <= 4; ++c)
                    EXPECT_LE(count_rectangles(s, a + b, c), count_rectangles(s, a, c) * count_rectangles(s, b, c));
}

TEST(Extend, EvenSingleBlack) {
    auto s = builtin::even();
    auto r = extend_pattern(s, cells({{0, 0, 1}}), {0, 0, 3, 3});
    ASSERT_TRUE(r);
    EXPECT_TRUE(check_pattern(s, *r).empty());
    EXPECT_EQ(r->get(0, 0), 1);
}

TEST(Extend, ChessBlackPairFails) {
    EXPECT_FALSE(extend_pattern(builtin::chess(), cells({{0, 0, 1}, {1, 0, 1}}), {-1, -1, 5, 4}));
}

TEST(Extend, FullPatternReturnsItself) {
    auto s = builtin::chess();
    Pattern p = Pattern::from_rows({{0, 1}, {1, 0}});
    auto r = extend_pattern(s, p, {0, 0, 2, 2});
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, p);
}

TEST(StripCounts, Frozen) {
    EXPECT_EQ(strip_counts(builtin::full_shift(2), 3, 2, Boundary::free).counts_by_height[1], 64);
    // 16 fillings, 9 of which contain a black domino.
    EXPECT_EQ(strip_counts(builtin::even(), 2, 2, Boundary::free).counts_by_height[1], 7);
    EXPECT_EQ(brute_count(builtin::even(), 2, 2, false), 7);
    EXPECT_EQ(strip_counts(builtin::chess(), 4, 4, Boundary::periodic).counts_by_height[3], 2);
}

TEST(StripCounts, PeriodicMatchesBruteForce) {
    for (auto s : {builtin::even(), builtin::chess(), builtin::linear(), builtin::delta(), builtin::log_first_layer()})
        for (int w = s.rank; w <= 4; ++w) {
            auto tc = strip_counts(s, w, 3, Boundary::periodic);
            auto fc = strip_counts(s, w, 3, Boundary::free);
            for (int h = 1; h <= 3; ++h) {
                EXPECT_EQ(tc.counts_by_height[h - 1], brute_count(s, w, h, true)) << s.name << " " << w << "x" << h;
                EXPECT_GE(fc.counts_by_height[h - 1], tc.counts_by_height[h - 1]);
            }
        }
}

TEST(StripCounts, WidthTooSmall) {
    try {
        strip_counts(builtin::linear(), 2, 2, Boundary::free);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code, "WidthTooSmall");
    }
}

TEST(Json, SftRoundTrip) {
    auto s = builtin::linear();
    auto j = sft_to_json(s);
    auto t = sft_from_json(j);
    EXPECT_EQ(sft_to_json(t), j);
    EXPECT_EQ(count_blocks(t, 4), count_blocks(s, 4));
}

TEST(Json, SetValuedCells) {
    json j = json::parse(R"({"alphabet":["a","b","c"],"forbidden":[{"cells":[[0,0,"a"],[1,0,["b","c"]]]}]})");
    auto s = sft_from_json(j);
    EXPECT_EQ(s.rank, 2);
    EXPECT_EQ(count_rectangles(s, 2, 1), 7);
}

TEST(Torus, FillAndVerify) {
    auto s = builtin::chess();
    EXPECT_FALSE(torus_fill(s, 1, 1));
    auto d = torus_fill(s, 2, 2);
    ASSERT_TRUE(d);
    EXPECT_TRUE(torus_violations(s, *d).empty());
}

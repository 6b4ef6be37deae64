#include <gtest/gtest.h>

#include <sftkit/builtin.hpp>
#include <sftkit/entropy.hpp>

using namespace sftkit;
using namespace sftkit::entropy;

TEST(Estimate, FullShiftRatioIsOne) {
    auto rep = entropy_estimate(builtin::full_shift(2), 5, 4);
    for (auto& b : rep.per_n) EXPECT_DOUBLE_EQ(b.ratio, 1.0);
    for (auto& u : rep.upper_seq) EXPECT_DOUBLE_EQ(u.value, 1.0);
    for (auto& l : rep.lower_seq) EXPECT_DOUBLE_EQ(l.value, 1.0);
}

TEST(Estimate, ChessRatioVanishes) {
    auto rep = entropy_estimate(builtin::chess(), 6, 6);
    for (auto& b : rep.per_n) {
        EXPECT_EQ(b.count, 2);
        EXPECT_DOUBLE_EQ(b.ratio, 1.0 / (b.n * b.n));
    }
    // Odd heights admit no periodic filling of width 6.
    for (auto& l : rep.lower_seq) EXPECT_EQ(l.height % 2, 0);
    EXPECT_TRUE(rep.upper_non_increasing());
}

TEST(Estimate, DistortedTrivialBracketsOne) {
    auto ds = distort::distort_sft_r(builtin::trivial(), 1);
    auto rep = entropy_estimate(ds.derived, 6, 6);
    EXPECT_TRUE(rep.upper_non_increasing());
    for (auto& u : rep.upper_seq) EXPECT_GT(u.value, 1.0);
    ASSERT_FALSE(rep.lower_seq.empty());
    for (auto& l : rep.lower_seq) {
        EXPECT_GE(l.value, 1.0);
        EXPECT_LE(l.value, rep.upper_seq[l.height - 1].value);
    }
    // Free strip at height = width is the exact block ratio.
    EXPECT_EQ(rep.upper_seq[5].count, rep.per_n[5].count);
    EXPECT_EQ(rep.per_n[1].count, 32);
}

TEST(Estimate, RotationInvariant) {
    for (auto& x : {builtin::even(), builtin::chess(), builtin::linear(), builtin::log_first_layer()}) {
        auto a = entropy_estimate(x, 4, 4, {0, 2'000'000, false});
        auto b = entropy_estimate(distort::rotate_sft(x), 4, 4, {0, 2'000'000, false});
        for (std::size_t i = 0; i < a.per_n.size(); ++i) EXPECT_EQ(a.per_n[i].count, b.per_n[i].count) << x.name;
    }
}

TEST(Estimate, Csv) {
    auto csv = to_csv(entropy_estimate(builtin::even(), 3, 3));
    EXPECT_EQ(csv.rfind("n,count,ratio,upper,lower\n1,2,1,", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Estimate, JsonFields) {
    json j = to_json(entropy_estimate(builtin::even(), 2, 2));
    EXPECT_EQ(j["per_n"][1]["count"], "7");
    EXPECT_TRUE(j["target"].is_null());
    EXPECT_EQ(j, json::parse(j.dump()));
}

TEST(Shift, LowerBoundInequality) {
    for (int r : {1, 2, 3}) {
        auto rep = entropy_shift_check(builtin::trivial(), r);
        ASSERT_EQ(rep.rows.size(), 2u);
        for (auto& w : rep.rows) {
            EXPECT_EQ(w.witness, w.formula) << r << " " << w.k;
            EXPECT_GE(w.full, w.witness);
        }
        EXPECT_TRUE(rep.inequality_holds());
        EXPECT_TRUE(rep.strips.upper_non_increasing());
        EXPECT_TRUE(rep.strips.upper_above_target());
    }
    EXPECT_EQ(entropy_shift_check(builtin::trivial(), 1).rows[0].witness, 2);
}

TEST(Shift, Targets) {
    EXPECT_DOUBLE_EQ(entropy_shift_check(builtin::trivial(), 1, {1, 6, 2}).target, 1.0);
    EXPECT_NEAR(entropy_shift_check(builtin::trivial(), 2, {1, 6, 2}).target, 0.7925, 1e-4);
    EXPECT_NEAR(entropy_shift_check(builtin::trivial(), 3, {1, 6, 2}).target, 2.0 / 3, 1e-12);
}

TEST(Shift, UpperApproachesTargetForROne) {
    auto rep = entropy_shift_check(builtin::trivial(), 1, {1, 6, 14});
    EXPECT_LT(rep.final_gap(), 0.15);
    EXPECT_GT(rep.final_gap(), 0.0);
}

TEST(Density, SupertileSix) {
    const Pattern& st = robinson::supertile(6, robinson::Quad::sw);
    auto d = density_report(st);
    double tol = 2.0 / st.width();
    EXPECT_NEAR(d.lambda.at(0).convert_to<double>(), 1.0 / 16, tol);
    EXPECT_NEAR(d.star.convert_to<double>(), 0.75, tol);
    EXPECT_EQ(d.total(), 1);
    double rest = 0.25 - (d.lambda[0] + d.lambda[1]).convert_to<double>();
    EXPECT_NEAR(rest, 9.0 / 64, tol);
    EXPECT_EQ(density_lambda(st, 0), d.lambda[0]);
    EXPECT_EQ(density_star(st), d.star);
    EXPECT_EQ(density_lambda(st, 40), 0);
}

TEST(Density, PartitionOnSmallWindows) {
    for (int n = 2; n <= 5; ++n) EXPECT_EQ(density_report(robinson::supertile(n, robinson::Quad::ne)).total(), 1);
}

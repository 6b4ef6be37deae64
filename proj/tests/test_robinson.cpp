#include <gtest/gtest.h>

#include <sftkit/robinson.hpp>

#include <random>

using namespace sftkit;
using namespace sftkit::robinson;

namespace {

const Catalog& cat() { return Catalog::get(); }

Tile arrow(Kind k, Dir d, int i, int j, int hand = 0, int mark = kBlank) {
    Tile t;
    t.kind = k;
    t.dir = d;
    t.i = i;
    t.j = j;
    t.hand = hand;
    t.mark = mark;
    return t;
}

Tile corner(Quad q, bool red = false, int value = 0) {
    Tile t;
    t.quad = q;
    t.red = red;
    t.value = t.i = t.j = value;
    return t;
}

std::set<std::string> rules_of(const std::vector<Violation>& v) {
    std::set<std::string> out;
    for (auto& x : v) out.insert(x.rule);
    return out;
}

Pattern no_blue() { return Pattern(0, 0, 2, 2, cat().id(arrow(Kind::arrows6, Dir::E, 0, 1))); }

}  // namespace

TEST(Catalog, SymbolCountAndInvariants) {
    EXPECT_EQ(cat().tiles.size(), 180u);
    std::set<std::string> names;
    for (auto& t : cat().tiles) {
        names.insert(t.name());
        if (t.kind == Kind::arrows5 || t.kind == Kind::arrows6) EXPECT_NE(t.i, t.j);
        if (t.blue()) EXPECT_EQ(t.value, 0);
        if (!t.single_line()) EXPECT_EQ(t.mark, kBlank);
    }
    EXPECT_EQ(names.size(), 180u);
    EXPECT_EQ(cat().tile(cat().id(corner(Quad::sw))).name(), "C:blue:sw:0");
    EXPECT_EQ(arrow(Kind::arrows3, Dir::N, 0, 1, 0, static_cast<int>(Quad::ne)).name(), "A3:N:i=0:j=1@ne");
}

TEST(Catalog, RotationClosure) {
    for (auto& t : cat().tiles) {
        Sides s = robinson::detail::sides_of(t);
        Sides r = s;
        for (int k = 0; k < 4; ++k) r = rotate(r);
        EXPECT_EQ(r, s);
        Tile u = t;
        if (t.is_corner())
            u.quad = rotate(t.quad);
        else
            u.dir = rotate(t.dir);
        EXPECT_EQ(robinson::detail::sides_of(u), rotate(s)) << t.name();
    }
}

TEST(Supertile, OrderZeroIsBlueCorner) {
    for (int q = 0; q < 4; ++q) {
        auto& p = supertile(0, static_cast<Quad>(q));
        ASSERT_EQ(p.size(), 1u);
        EXPECT_EQ(cat().tile(p.get(0, 0)).name(), corner(static_cast<Quad>(q)).name());
    }
}

TEST(Supertile, Side) {
    EXPECT_EQ(supertile(4, Quad::ne).width(), 31);
    EXPECT_EQ(supertile(4, Quad::ne).height(), 31);
    EXPECT_TRUE(supertile(4, Quad::ne).is_full());
}

TEST(Supertile, OrderCap) {
    try {
        supertile(9, Quad::sw);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code, "OrderTooLarge");
    }
}

TEST(Supertile, GeneratorCheckerDuality) {
    for (int n = 0; n <= 5; ++n)
        for (int q = 0; q < 4; ++q) EXPECT_TRUE(verify_rules(supertile(n, static_cast<Quad>(q))).empty()) << n << " " << q;
}

TEST(Supertile, MatchesOrderTwoFigure) {
    auto fig = load_figure(SFTKIT_DATA_DIR "/st_sw2_figure.json");
    auto& p = supertile(2, Quad::sw);
    ASSERT_EQ(fig.size(), 49u);
    p.for_each([&](int x, int y, int s) { EXPECT_EQ(figure_key(cat().tile(s)), (fig[{x, y}])) << x << "," << y; });
    const Tile& center = cat().tile(p.get(3, 3));
    EXPECT_TRUE(center.red);
    EXPECT_EQ(center.quad, Quad::sw);
}

TEST(Rules, ArrowMismatchPair) {
    // Five-arrow tile pointing down above a four-arrow tile whose two lines are on the left.
    Pattern bad;
    bad.set(0, 1, cat().id(arrow(Kind::arrows5, Dir::S, 0, 1)));
    bad.set(0, 0, cat().id(arrow(Kind::arrows4, Dir::S, 0, 1, 0)));
    auto v = verify_rules(bad);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].rule, "R1");

    Pattern good;
    good.set(0, 1, cat().id(arrow(Kind::arrows5, Dir::S, 0, 1)));
    good.set(0, 0, cat().id(arrow(Kind::arrows3, Dir::S, 0, 1)));
    EXPECT_TRUE(verify_rules(good).empty());
}

TEST(Rules, TwoByTwoWithoutBlue) {
    auto& st = supertile(1, Quad::sw);
    EXPECT_TRUE(rules_of(verify_rules(no_blue())).count("R2"));
    EXPECT_FALSE(rules_of(verify_rules(st.cropped({0, 0, 2, 2}))).count("R2"));
}

TEST(Rules, CounterTransmission) {
    Pattern p = supertile(2, Quad::sw);
    int s = p.get(3, 1);
    Tile t = cat().tile(s);
    t.i ^= 1;
    if (t.kind == Kind::arrows5 || t.kind == Kind::arrows6) t.j ^= 1;
    p.set(3, 1, cat().id(t));
    EXPECT_TRUE(rules_of(verify_rules(p)).count("R3"));
}

TEST(Rules, AlignmentMarksAreDetermined) {
    Pattern p = supertile(4, Quad::sw);
    int checked = 0;
    p.for_each([&](int x, int y, int s) {
        const Tile& t = cat().tile(s);
        if (!t.single_line()) return;
        Rect win{x - 3, y - 3, 7, 7};
        int fits = 0;
        for (int m = kBlank; m < 4; ++m) {
            Tile u = t;
            u.mark = m;
            Pattern q = p.cropped(win);
            q.set(x, y, cat().id(u));
            if (verify_rules(q).empty()) {
                ++fits;
                EXPECT_EQ(m, t.mark);
            }
        }
        EXPECT_EQ(fits, 1) << x << "," << y;
        ++checked;
    });
    EXPECT_GT(checked, 0);
}

TEST(Rules, SynchronizationCoherence) {
    // Two single arms meeting a vertical line from east and west must carry matching marks.
    Pattern p = supertile(3, Quad::sw);
    bool found = false;
    p.for_each([&](int x, int y, int s) {
        if (found) return;
        const Tile& a = cat().tile(s);
        if (!a.single_line() || a.dir != Dir::E || !p.defined(x + 2, y)) return;
        const Tile& b = cat().tile(p.get(x + 2, y));
        if (!b.single_line() || b.dir != Dir::W) return;
        found = true;
        Tile c = b;
        c.mark = (b.mark + 1) % 4;
        Pattern q = p;
        q.set(x + 2, y, cat().id(c));
        EXPECT_TRUE(rules_of(verify_rules(q)).count("align-sync"));
    });
    EXPECT_TRUE(found);
}

TEST(Petals, OrderTwoSupertile) {
    auto h = extract_petals(supertile(2, Quad::sw));
    EXPECT_EQ(h.count(0), 4u);
    EXPECT_EQ(h.count(1), 1u);
    for (auto& pt : h.petals)
        if (pt.order == 0) EXPECT_EQ(pt.side(), 3);
    EXPECT_TRUE(extract_petals(supertile(0, Quad::ne)).petals.empty());
}

TEST(Petals, SideLawAndHierarchy) {
    auto h = extract_petals(supertile(6, Quad::nw, 8));
    for (auto& pt : h.petals) {
        EXPECT_EQ(pt.side(), (1 << (pt.order + 1)) + 1);
        if (pt.order > 0) EXPECT_EQ(pt.children.size(), 4u);
        EXPECT_EQ(pt.support(), pt.order % 2 == 1);
    }
    EXPECT_TRUE(h.missing_children.empty());
    EXPECT_EQ(h.count(5), 1u);
}

TEST(Petals, NotAdmissible) {
    try {
        extract_petals(no_blue());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code, "NotAdmissible");
    }
}

TEST(Cells, ProperContainment) {
    auto h = extract_petals(supertile(6, Quad::sw, 8));
    for (int m = 1; m <= 2; ++m)
        for (auto& c : cells_of_order(h, m)) {
            EXPECT_EQ(c.w, (1 << (2 * m + 2)) + 1);
            auto counts = proper_cell_counts(h, c, m);
            std::size_t want = 4;
            for (int i = 1; i <= m; ++i, want *= 12) EXPECT_EQ(counts[i - 1], want) << "m=" << m << " i=" << i;
        }
}

TEST(Occurrences, Lattice) {
    auto occ = periodic_occurrences(supertile(1, Quad::sw), 0);
    EXPECT_EQ(occ.size(), 4u);
    std::set<Quad> quads;
    for (auto& o : occ) quads.insert(o.orientation);
    EXPECT_EQ(quads.size(), 4u);

    auto occ3 = periodic_occurrences(supertile(3, Quad::sw), 1);
    EXPECT_EQ(occ3.size(), 16u);
    for (auto& a : occ3)
        for (auto& b : occ3)
            if (a.orientation == b.orientation) {
                EXPECT_EQ((a.x - b.x) % 8, 0);
                EXPECT_EQ((a.y - b.y) % 8, 0);
            }

    auto self = periodic_occurrences(supertile(3, Quad::se), 3);
    ASSERT_EQ(self.size(), 1u);
    EXPECT_EQ(self[0], (Occurrence{0, 0, Quad::se}));
}

TEST(Completion, Examples) {
    auto c = complete_block(supertile(1, Quad::sw));
    EXPECT_EQ(c.order, 6);
    EXPECT_TRUE(c.supertile->contains_at(supertile(1, Quad::sw), c.dx, c.dy));

    auto c1 = complete_block(supertile(0, Quad::sw));
    EXPECT_EQ(c1.order, 4);
    EXPECT_EQ(chi(1), 4);
    EXPECT_EQ(chi(3), 6);
    EXPECT_EQ(chi(5), 7);
}

TEST(Completion, SampledBlocks) {
    auto& st = supertile(5, Quad::sw);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pos(0, st.width() - 3);
    for (int k = 0; k < 60; ++k) {
        int x = pos(rng), y = pos(rng);
        Pattern b = st.cropped({x, y, 3, 3}).normalized();
        auto c = complete_block(b);
        EXPECT_EQ(c.order, 6);
        EXPECT_TRUE(c.supertile->contains_at(b, c.dx, c.dy));
        EXPECT_TRUE(verify_rules(*c.supertile).empty());
    }
}

TEST(Completion, RejectsInadmissible) {
    try {
        complete_block(no_blue());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code, "NotAdmissible");
    }
}

TEST(Cells, RecurrencePeriod) {
    auto& p = supertile(7, Quad::sw);
    auto h = extract_petals(p);
    for (int n = 0; n <= 1; ++n) {
        int period = 1 << (2 * n + 4);
        auto r = cell_recurrence(p, h, n, period);
        EXPECT_GT(r.same, 0u);
        EXPECT_EQ(r.different, 0u);
        EXPECT_GT(cell_recurrence(p, h, n, period / 2).different, 0u);
    }
}

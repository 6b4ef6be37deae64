#pragma once

#include "sft.hpp"

#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace sftkit::robinson {

enum class Kind : uint8_t { corner, arrows3, arrows4, arrows5, arrows6 };
enum class Dir : uint8_t { N, E, S, W };
enum class Quad : uint8_t { sw, se, ne, nw };  // successive quarter turns
constexpr int kBlank = -1;                     // alignment mark absent

inline const char* kind_name(Kind k) {
    static const char* n[] = {"corner", "arrows3", "arrows4", "arrows5", "arrows6"};
    return n[static_cast<int>(k)];
}
inline const char* dir_name(Dir d) {
    static const char* n[] = {"N", "E", "S", "W"};
    return n[static_cast<int>(d)];
}
inline const char* quad_name(Quad q) {
    static const char* n[] = {"sw", "se", "ne", "nw"};
    return n[static_cast<int>(q)];
}
inline Quad quad_from(std::string_view s) {
    for (int q = 0; q < 4; ++q)
        if (s == quad_name(static_cast<Quad>(q))) return static_cast<Quad>(q);
    throw Error("InvalidArgument", "unknown orientation '" + std::string(s) + "'");
}
inline Dir dir_from(std::string_view s) {
    for (int d = 0; d < 4; ++d)
        if (s == dir_name(static_cast<Dir>(d))) return static_cast<Dir>(d);
    throw Error("InvalidArgument", "unknown direction '" + std::string(s) + "'");
}

inline std::pair<int, int> step(Dir d) {
    static const int dx[] = {0, 1, 0, -1}, dy[] = {1, 0, -1, 0};
    return {dx[static_cast<int>(d)], dy[static_cast<int>(d)]};
}
inline Dir opposite(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 2) % 4); }
inline bool horizontal(Dir d) { return d == Dir::E || d == Dir::W; }

// Sides are indexed by the direction they face (N = top, E = right, ...).
// Each side has three arrow slots, counted left to right on top/bottom and
// bottom to top on left/right.
enum Slot : uint8_t { none = 0, in = 1, out = 2 };
using Side = std::array<uint8_t, 3>;
using Sides = std::array<Side, 4>;

inline bool empty_side(const Side& s) { return s[0] == none && s[1] == none && s[2] == none; }

// Quarter turn counter-clockwise.
inline Sides rotate(const Sides& s) {
    Sides r{};
    for (int k = 0; k < 3; ++k) {
        r[3][k] = s[0][k];      // top -> left
        r[0][2 - k] = s[1][k];  // right -> top
        r[1][k] = s[2][k];      // bottom -> right
        r[2][2 - k] = s[3][k];  // left -> bottom
    }
    return r;
}
inline Dir rotate(Dir d) {  // S -> E -> N -> W
    static const Dir r[] = {Dir::W, Dir::N, Dir::E, Dir::S};
    return r[static_cast<int>(d)];
}
inline Quad rotate(Quad q) { return static_cast<Quad>((static_cast<int>(q) + 1) % 4); }

struct Tile {
    Kind kind = Kind::corner;
    Dir dir = Dir::S;  // direction of the long arrow
    int hand = 0;      // which pair of slots carries a double line, arrows4/arrows6 only
    Quad quad = Quad::sw;
    bool red = false;
    int value = 0;
    int i = 0, j = 0;
    int mark = kBlank;  // alignment layer, a Quad or kBlank

    bool is_corner() const { return kind == Kind::corner; }
    bool blue() const { return is_corner() && !red; }
    bool single_line() const { return kind == Kind::arrows3 || kind == Kind::arrows5; }
    bool double_line() const { return kind == Kind::arrows4 || kind == Kind::arrows6; }

    std::string name() const {
        std::string s;
        if (is_corner()) {
            s = std::string("C:") + (red ? "red" : "blue") + ":" + quad_name(quad) + ":" + std::to_string(value);
        } else {
            s = std::string(kind == Kind::arrows3   ? "A3"
                            : kind == Kind::arrows4 ? "A4"
                            : kind == Kind::arrows5 ? "A5"
                                                    : "A6") +
                ":" + dir_name(dir);
            if (double_line()) s += ":h=" + std::to_string(hand);
            s += ":i=" + std::to_string(i) + ":j=" + std::to_string(j);
        }
        if (mark != kBlank) s += std::string("@") + quad_name(static_cast<Quad>(mark));
        return s;
    }
};

namespace detail {

inline Sides make_sides(std::initializer_list<std::tuple<Dir, Slot, std::vector<int>>> spec) {
    Sides s{};
    for (auto& [d, v, slots] : spec)
        for (int k : slots) s[static_cast<int>(d)][k] = v;
    return s;
}

// Tiles pointing south, or the south-west corner.
inline Sides base_sides(Kind k, int hand) {
    using enum Dir;
    switch (k) {
        case Kind::corner:
            return make_sides({{N, out, {0, 1}}, {E, out, {0, 1}}, {W, out, {1}}, {S, out, {1}}});
        case Kind::arrows3:
            return make_sides({{N, in, {1}}, {S, out, {1}}, {W, in, {1}}, {E, in, {1}}});
        case Kind::arrows5:
            return make_sides({{N, in, {1}}, {S, out, {1}}, {W, in, {0, 1}}, {E, in, {0, 1}}});
        case Kind::arrows4:
            if (hand == 0) return make_sides({{N, in, {0, 1}}, {S, out, {0, 1}}, {W, in, {1}}, {E, in, {1}}});
            return make_sides({{N, in, {1, 2}}, {S, out, {1, 2}}, {W, in, {1}}, {E, in, {1}}});
        case Kind::arrows6:
            if (hand == 0) return make_sides({{N, in, {0, 1}}, {S, out, {0, 1}}, {W, in, {0, 1}}, {E, in, {0, 1}}});
            return make_sides({{N, in, {1, 2}}, {S, out, {1, 2}}, {W, in, {0, 1}}, {E, in, {0, 1}}});
    }
    return {};
}

inline Sides sides_of(const Tile& t) {
    Sides s = base_sides(t.kind, t.hand);
    int turns = static_cast<int>(t.quad);
    if (!t.is_corner()) {
        turns = 0;
        for (Dir d = Dir::S; d != t.dir; d = rotate(d)) ++turns;
    }
    for (int k = 0; k < turns; ++k) s = rotate(s);
    return s;
}

inline bool complementary(const Side& a, const Side& b) {
    for (int k = 0; k < 3; ++k) {
        if (a[k] == none && b[k] != none) return false;
        if (a[k] == in && b[k] != out) return false;
        if (a[k] == out && b[k] != in) return false;
    }
    return true;
}

}  // namespace detail

// Symbol table of the Robinson layer with the alignment layer, and the rule set.
class Catalog {
public:
    std::vector<Tile> tiles;
    std::vector<Sides> sides;
    SftDefinition sft;

    static const Catalog& get() {
        static const Catalog c;
        return c;
    }

    int id(const Tile& t) const {
        auto it = ids_.find(t.name());
        if (it == ids_.end()) throw Error("UnknownSymbol", "no Robinson symbol " + t.name());
        return it->second;
    }
    const Tile& tile(int s) const { return tiles.at(s); }

    // Non-corner tile shape (kind, direction, hand) with exactly these sides.
    std::optional<std::tuple<Kind, Dir, int>> shape_of(const Sides& s) const {
        auto it = shapes_.find(s);
        if (it == shapes_.end()) return std::nullopt;
        return it->second;
    }

    SymbolSet where(const std::function<bool(const Tile&)>& pred) const {
        SymbolSet s(tiles.size());
        for (std::size_t k = 0; k < tiles.size(); ++k)
            if (pred(tiles[k])) s.set(k);
        return s;
    }

private:
    Catalog() {
        for (int q = 0; q < 4; ++q)
            for (int c = 0; c < 3; ++c) {
                Tile t;
                t.quad = static_cast<Quad>(q);
                t.red = c > 0;
                t.value = t.i = t.j = c == 2 ? 1 : 0;
                add(t);
            }
        for (Kind k : {Kind::arrows3, Kind::arrows5, Kind::arrows4, Kind::arrows6})
            for (int d = 0; d < 4; ++d)
                for (int hand = 0; hand < ((k == Kind::arrows4 || k == Kind::arrows6) ? 2 : 1); ++hand)
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            if ((k == Kind::arrows5 || k == Kind::arrows6) && i == j) continue;
                            Tile t;
                            t.kind = k;
                            t.dir = static_cast<Dir>(d);
                            t.hand = hand;
                            t.i = i;
                            t.j = j;
                            if (k == Kind::arrows3 || k == Kind::arrows5) {
                                for (int m = kBlank; m < 4; ++m) {
                                    t.mark = m;
                                    add(t);
                                }
                            } else {
                                add(t);
                            }
                        }
        std::vector<std::string> names;
        for (auto& t : tiles) names.push_back(t.name());
        sft = SftDefinition(names, {}, 3, "robinson_adr");
        add_rules();
        sft.finalize();
    }

    void add(const Tile& t) {
        ids_.emplace(t.name(), static_cast<int>(tiles.size()));
        tiles.push_back(t);
        sides.push_back(detail::sides_of(t));
        if (!t.is_corner()) shapes_.emplace(sides.back(), std::tuple(t.kind, t.dir, t.hand));
    }

    void rule(std::vector<std::tuple<int, int, SymbolSet>> cells, const std::string& label) {
        std::vector<ForbiddenCell> cs;
        for (auto& [x, y, s] : cells) {
            if (s.none()) return;
            cs.push_back({x, y, s});
        }
        sft.forbid(std::move(cs), label);
    }

    void add_rules() {
        std::size_t n = tiles.size();
        // Rule 1: arrows match across every edge.
        for (Dir d : {Dir::E, Dir::N}) {
            auto [dx, dy] = step(d);
            int a = static_cast<int>(d), b = static_cast<int>(opposite(d));
            std::map<Side, SymbolSet> from, to;
            for (std::size_t k = 0; k < n; ++k) {
                from.try_emplace(sides[k][a], SymbolSet(n)).first->second.set(k);
                to.try_emplace(sides[k][b], SymbolSet(n)).first->second.set(k);
            }
            for (auto& [sa, A] : from)
                for (auto& [sb, B] : to)
                    if (!detail::complementary(sa, sb)) rule({{0, 0, A}, {dx, dy, B}}, "R1");
        }
        // Rule 2: a blue corner in every 2x2 square, blue corners repeat with step 2.
        SymbolSet blue = where([](const Tile& t) { return t.blue(); });
        SymbolSet other = ~blue;
        rule({{0, 0, other}, {1, 0, other}, {0, 1, other}, {1, 1, other}}, "R2");
        for (auto [dx, dy] : {std::pair(2, 0), std::pair(0, 2)}) {
            rule({{0, 0, blue}, {dx, dy, other}}, "R2");
            rule({{0, 0, other}, {dx, dy, blue}}, "R2");
        }
        // Rule 3: i is shared by horizontal neighbours, j by vertical neighbours.
        for (int v = 0; v < 2; ++v) {
            rule({{0, 0, where([&](const Tile& t) { return t.i == v; })},
                  {1, 0, where([&](const Tile& t) { return t.i != v; })}},
                 "R3");
            rule({{0, 0, where([&](const Tile& t) { return t.j == v; })},
                  {0, 1, where([&](const Tile& t) { return t.j != v; })}},
                 "R3");
        }
        // Alignment layer. Induction: the single arms leaving a corner carry its orientation.
        for (int q = 0; q < 4; ++q) {
            Quad quad = static_cast<Quad>(q);
            for (Dir d : single_arms(quad)) {
                auto [dx, dy] = step(d);
                rule({{0, 0, where([&](const Tile& t) { return t.is_corner() && t.quad == quad; })},
                      {dx, dy, where([&](const Tile& t) { return t.single_line() && t.dir == d && t.mark != q; })}},
                     "align-induction");
            }
        }
        // Transmission along a single line.
        for (int d = 0; d < 4; ++d) {
            Dir dir = static_cast<Dir>(d);
            auto [dx, dy] = step(dir);
            for (int m = kBlank; m < 4; ++m)
                rule({{0, 0, where([&](const Tile& t) { return t.single_line() && t.dir == dir && t.mark == m; })},
                      {dx, dy, where([&](const Tile& t) { return t.single_line() && t.dir == dir && t.mark != m; })}},
                     "align-transmission");
        }
        // Synchronization and coherence: two single arms meeting a line from both sides.
        auto sync = [&](Dir first, Dir last, std::pair<int, int> d, std::map<int, int> allowed) {
            SymbolSet across = where([&](const Tile& t) { return !t.is_corner() && horizontal(t.dir) != horizontal(first); });
            for (int a = kBlank; a < 4; ++a)
                rule({{0, 0, where([&](const Tile& t) { return t.single_line() && t.dir == first && t.mark == a; })},
                      {d.first, d.second, across},
                      {2 * d.first, 2 * d.second, where([&](const Tile& t) {
                           return t.single_line() && t.dir == last && !(allowed.count(a) && allowed[a] == t.mark);
                       })}},
                     "align-sync");
        };
        auto qi = [](Quad q) { return static_cast<int>(q); };
        sync(Dir::E, Dir::W, {1, 0}, {{qi(Quad::ne), qi(Quad::nw)}, {qi(Quad::se), qi(Quad::sw)}});
        sync(Dir::N, Dir::S, {0, 1}, {{qi(Quad::nw), qi(Quad::sw)}, {qi(Quad::ne), qi(Quad::se)}});
    }

public:
    static std::array<Dir, 2> single_arms(Quad q) {
        switch (q) {
            case Quad::sw: return {Dir::W, Dir::S};
            case Quad::se: return {Dir::E, Dir::S};
            case Quad::ne: return {Dir::E, Dir::N};
            default: return {Dir::W, Dir::N};
        }
    }
    static std::array<Dir, 2> double_arms(Quad q) {
        switch (q) {
            case Quad::sw: return {Dir::N, Dir::E};
            case Quad::se: return {Dir::N, Dir::W};
            case Quad::ne: return {Dir::S, Dir::W};
            default: return {Dir::S, Dir::E};
        }
    }

private:
    std::unordered_map<std::string, int> ids_;
    std::map<Sides, std::tuple<Kind, Dir, int>> shapes_;
};

inline const SftDefinition& sft() { return Catalog::get().sft; }

inline std::vector<Violation> verify_rules(const Pattern& p) { return check_pattern(sft(), p); }

// ---------------------------------------------------------------------------
// Supertiles

constexpr int kDefaultCap = 7;

inline int side_of_order(int n) { return (1 << (n + 1)) - 1; }

namespace detail {

inline Pattern build_supertile(int n, Quad o, const std::function<const Pattern&(int, Quad)>& lower) {
    auto& cat = Catalog::get();
    if (n == 0) {
        Tile t;
        t.quad = o;
        Pattern p(0, 0, 1, 1);
        p.set(0, 0, cat.id(t));
        return p;
    }
    int s = side_of_order(n - 1), S = side_of_order(n), c = s;
    Pattern p(0, 0, S, S);
    p.paste(lower(n - 1, Quad::sw));
    p.paste(lower(n - 1, Quad::se).shifted(s + 1, 0));
    p.paste(lower(n - 1, Quad::nw).shifted(0, s + 1));
    p.paste(lower(n - 1, Quad::ne).shifted(s + 1, s + 1));
    Tile center;
    center.quad = o;
    center.red = true;
    center.value = center.i = center.j = n % 2;
    p.set(c, c, cat.id(center));

    auto dbl = Catalog::double_arms(o);
    for (int d = 0; d < 4; ++d) {
        Dir dir = static_cast<Dir>(d);
        bool is_double = dir == dbl[0] || dir == dbl[1];
        auto [dx, dy] = step(dir);
        int px = c, py = c;
        for (int k = 1; k <= s; ++k) {
            int x = c + k * dx, y = c + k * dy;
            Sides sig{};
            const Side& prev = cat.sides[p.get(px, py)][d];
            for (int q = 0; q < 3; ++q)
                if (prev[q] == out) {
                    sig[static_cast<int>(opposite(dir))][q] = in;
                    sig[d][q] = out;
                }
            int lateral_value = -1;
            for (Dir side : {rotate(dir), opposite(rotate(dir))}) {
                auto [sx, sy] = step(side);
                int nb = p.get(x + sx, y + sy);
                const Side& ns = cat.sides[nb][static_cast<int>(opposite(side))];
                for (int q = 0; q < 3; ++q) {
                    if (ns[q] == in) throw Error("InternalError", "arm neighbour expects an arrow");
                    if (ns[q] == out) sig[static_cast<int>(side)][q] = in;
                }
                if (!empty_side(ns)) {
                    const Tile& nt = cat.tile(nb);
                    int v = horizontal(dir) ? nt.j : nt.i;
                    if (lateral_value >= 0 && lateral_value != v)
                        throw Error("InternalError", "lateral counters disagree on an arm");
                    lateral_value = v;
                }
            }
            auto shape = cat.shape_of(sig);
            if (!shape) throw Error("InternalError", "no tile fits an arm cell");
            auto [kind, tdir, hand] = *shape;
            Tile t;
            t.kind = kind;
            t.dir = tdir;
            t.hand = hand;
            if (tdir != dir || t.double_line() != is_double) throw Error("InternalError", "arm tile has wrong shape");
            int line = n % 2, lat = std::max(lateral_value, 0);
            t.i = horizontal(dir) ? line : lat;
            t.j = horizontal(dir) ? lat : line;
            if (t.single_line()) t.mark = static_cast<int>(o);
            p.set(x, y, cat.id(t));
            px = x, py = y;
        }
    }
    return p;
}

}  // namespace detail

// Memoized generator; lower orders are shared between orientations.
inline const Pattern& supertile(int order, Quad o, int cap = kDefaultCap) {
    if (order < 0) throw Error("InvalidArgument", "negative order");
    if (order > cap) throw Error("OrderTooLarge", "supertile order " + std::to_string(order) + " exceeds cap");
    static std::mutex mu;
    static std::map<std::pair<int, Quad>, std::unique_ptr<Pattern>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({order, o});
        if (it != cache.end()) return *it->second;
    }
    std::function<const Pattern&(int, Quad)> lower = [&](int n, Quad q) -> const Pattern& {
        return supertile(n, q, cap);
    };
    auto built = std::make_unique<Pattern>(detail::build_supertile(order, o, lower));
    std::lock_guard lock(mu);
    auto [it, fresh] = cache.emplace(std::pair(order, o), std::move(built));
    return *it->second;
}

inline Pattern supertile_copy(int order, Quad o, int cap = kDefaultCap) { return supertile(order, o, cap); }

// Figure-level description of a tile: family, direction or quadrant, colour.
inline std::tuple<std::string, std::string, std::string> figure_key(const Tile& t) {
    if (t.is_corner()) return {"corner", quad_name(t.quad), t.red ? "red" : "blue"};
    return {kind_name(t.kind), dir_name(t.dir), ""};
}

inline std::map<std::pair<int, int>, std::tuple<std::string, std::string, std::string>> load_figure(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    json j = json::parse(in);
    std::map<std::pair<int, int>, std::tuple<std::string, std::string, std::string>> out;
    for (auto& t : j.at("tiles"))
        out[{t[0].get<int>(), t[1].get<int>()}] = {t[2].get<std::string>(), t[3].get<std::string>(),
                                                   t[4].get<std::string>()};
    return out;
}

// ---------------------------------------------------------------------------
// Petals and cells

struct Petal {
    int order = 0;
    std::array<std::pair<int, int>, 4> corners;  // sw, se, nw, ne
    int value = 0;
    bool support() const { return value == 1; }
    int parent = -1;
    std::vector<int> children;

    int side() const { return corners[1].first - corners[0].first + 1; }
    Rect square() const { return {corners[0].first, corners[0].second, side(), side()}; }
};

struct PetalHierarchy {
    std::vector<Petal> petals;
    std::vector<std::pair<int, int>> partial;  // sw corners whose petal leaves the window
    std::vector<int> missing_children;         // petals with fewer than four children in the window

    std::size_t count(int order) const {
        return static_cast<std::size_t>(
            std::count_if(petals.begin(), petals.end(), [&](const Petal& p) { return p.order == order; }));
    }
};

inline PetalHierarchy extract_petals(const Pattern& p, bool checked = true) {
    if (checked && !verify_rules(p).empty()) throw Error("NotAdmissible", "pattern violates Robinson rules");
    auto& cat = Catalog::get();
    PetalHierarchy h;
    Rect box = p.box();
    auto tile_at = [&](int x, int y) -> const Tile* {
        int s = p.get(x, y);
        return s == kUndef ? nullptr : &cat.tile(s);
    };
    // Length of the double arm leaving (x,y) in direction d, 0 if it leaves the window.
    auto arm = [&](int x, int y, Dir d) {
        auto [dx, dy] = step(d);
        for (int k = 1;; ++k) {
            const Tile* t = tile_at(x + k * dx, y + k * dy);
            if (!t) return 0;
            if (t->double_line() && t->dir == d) continue;
            return (!t->is_corner() && horizontal(t->dir) != horizontal(d)) ? k : -1;
        }
    };
    std::map<std::pair<int, int>, int> by_sw;
    p.for_each([&](int x, int y, int s) {
        const Tile& t = cat.tile(s);
        if (!t.is_corner() || t.quad != Quad::sw) return;
        int L = arm(x, y, Dir::E), L2 = arm(x, y, Dir::N);
        if (L == 0 || L2 == 0) {
            h.partial.emplace_back(x, y);
            return;
        }
        if (L < 0 || L != L2 || (L & (L - 1)) != 0) return;
        int side = 2 * L + 1;
        Petal pt;
        pt.order = std::countr_zero(static_cast<unsigned>(L));
        pt.corners = {std::pair(x, y), std::pair(x + side - 1, y), std::pair(x, y + side - 1),
                      std::pair(x + side - 1, y + side - 1)};
        if (!box.contains(pt.square())) {
            h.partial.emplace_back(x, y);
            return;
        }
        static const Quad want[] = {Quad::sw, Quad::se, Quad::nw, Quad::ne};
        for (int k = 0; k < 4; ++k) {
            const Tile* c = tile_at(pt.corners[k].first, pt.corners[k].second);
            if (!c || !c->is_corner() || c->quad != want[k] || c->red != t.red || c->value != t.value) return;
        }
        pt.value = t.value;
        by_sw[{x, y}] = static_cast<int>(h.petals.size());
        h.petals.push_back(pt);
    });
    for (std::size_t k = 0; k < h.petals.size(); ++k) {
        auto& pt = h.petals[k];
        if (pt.order == 0) continue;
        int half = (1 << (pt.order - 1));  // half side of a child, minus one
        for (auto [cx, cy] : pt.corners) {
            auto it = by_sw.find({cx - half, cy - half});
            if (it != by_sw.end() && h.petals[it->second].order == pt.order - 1) {
                pt.children.push_back(it->second);
                h.petals[it->second].parent = static_cast<int>(k);
            }
        }
        if (pt.children.size() != 4) h.missing_children.push_back(static_cast<int>(k));
    }
    return h;
}

// Order-n cells are the squares bounded by order 2n+1 petals.
inline std::vector<Rect> cells_of_order(const PetalHierarchy& h, int n) {
    std::vector<Rect> out;
    for (auto& pt : h.petals)
        if (pt.order == 2 * n + 1) out.push_back(pt.square());
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return std::pair(a.y0, a.x0) < std::pair(b.y0, b.x0); });
    return out;
}

// Order-(m-i) cells inside `cell` that are not inside an intermediate cell, for i = 1..m.
inline std::vector<std::size_t> proper_cell_counts(const PetalHierarchy& h, const Rect& cell, int m) {
    std::vector<std::vector<Rect>> by_order(m);
    for (int k = 0; k < m; ++k)
        for (auto& r : cells_of_order(h, k))
            if (cell.contains(r) && !(r == cell)) by_order[k].push_back(r);
    std::vector<std::size_t> out;
    for (int i = 1; i <= m; ++i) {
        int k = m - i;
        std::size_t n = 0;
        for (auto& r : by_order[k]) {
            bool nested = false;
            for (int mid = k + 1; mid < m && !nested; ++mid)
                for (auto& e : by_order[mid])
                    if (e.contains(r)) {
                        nested = true;
                        break;
                    }
            if (!nested) ++n;
        }
        out.push_back(n);
    }
    return out;
}

struct Recurrence {
    std::size_t same = 0, different = 0;
};

// Compares order-n cells lying `period` apart horizontally or vertically.
inline Recurrence cell_recurrence(const Pattern& p, const PetalHierarchy& h, int n, int period) {
    auto cells = cells_of_order(h, n);
    std::map<std::pair<int, int>, Pattern> content;
    for (auto& c : cells) content.emplace(std::pair(c.x0, c.y0), p.cropped(c).normalized());
    Recurrence r;
    for (auto& [pos, a] : content)
        for (auto d : {std::pair(period, 0), std::pair(0, period)}) {
            auto it = content.find({pos.first + d.first, pos.second + d.second});
            if (it == content.end()) continue;
            (it->second == a ? r.same : r.different)++;
        }
    return r;
}

// ---------------------------------------------------------------------------
// Occurrences and completion

struct Occurrence {
    int x = 0, y = 0;
    Quad orientation = Quad::sw;
    bool operator==(const Occurrence&) const = default;
};

inline std::vector<Occurrence> periodic_occurrences(const Pattern& container, int sub_order, int cap = kDefaultCap) {
    auto& cat = Catalog::get();
    std::vector<Occurrence> out;
    int side = side_of_order(sub_order), half = side / 2;
    std::array<const Pattern*, 4> subs{};
    for (int q = 0; q < 4; ++q) subs[q] = &supertile(sub_order, static_cast<Quad>(q), cap);
    for (int y = container.y0(); y + side <= container.y0() + container.height(); ++y)
        for (int x = container.x0(); x + side <= container.x0() + container.width(); ++x) {
            int c = container.get(x + half, y + half);
            if (c == kUndef || !cat.tile(c).is_corner()) continue;
            int q = static_cast<int>(cat.tile(c).quad);
            if (container.contains_at(*subs[q], x, y)) out.push_back({x, y, static_cast<Quad>(q)});
        }
    return out;
}

inline int chi(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l + 4;
}

struct Completion {
    int order = 0;
    Quad orientation = Quad::sw;
    int dx = 0, dy = 0;  // position of the block's origin inside the supertile
    const Pattern* supertile = nullptr;
};

// Embeds an n-block into an order chi(n) supertile, trying orientations in sw, se, nw, ne order.
inline Completion complete_block(const Pattern& b, int cap = kDefaultCap) {
    Pattern nb = b.normalized();
    int n = std::max(nb.width(), nb.height());
    if (n == 0) throw Error("InvalidArgument", "empty block");
    if (!verify_rules(nb).empty()) throw Error("NotAdmissible", "block violates Robinson rules");
    int order = chi(n);
    for (Quad q : {Quad::sw, Quad::se, Quad::nw, Quad::ne}) {
        const Pattern& st = supertile(order, q, std::max(cap, order));
        for (int y = 0; y + nb.height() <= st.height(); ++y)
            for (int x = 0; x + nb.width() <= st.width(); ++x)
                if (st.contains_at(nb, x, y)) return {order, q, x, y, &st};
    }
    throw Error("CompletionFailed", "block does not occur in any order " + std::to_string(order) + " supertile");
}

}  // namespace sftkit::robinson

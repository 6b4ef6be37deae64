#pragma once

#include "delta.hpp"

#include <set>

namespace sftkit::distort {

struct Layers {
    std::optional<int> counter_r;
    bool colors = false;
};

// Meaning of one derived symbol: a ↓, or a → carrying a base symbol, a counter and a color.
struct Symbol {
    bool down = false;
    int base = -1;
    int counter = 0;
    int color = 0;
};

struct DistortedSft {
    SftDefinition base;
    Layers layers;
    SftDefinition derived;
    std::vector<Symbol> symbols;
    int down_id = 0;

    int r() const { return layers.counter_r.value_or(1); }

    // Derived symbols satisfying pred, as a set.
    template <class F>
    SymbolSet where(F&& pred) const {
        SymbolSet s(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (pred(symbols[i])) s.set(i);
        return s;
    }
    SymbolSet arrows() const {
        return where([](const Symbol& s) { return !s.down; });
    }
    SymbolSet down() const {
        return where([](const Symbol& s) { return s.down; });
    }

    // Δ layer of a derived pattern.
    Pattern delta_layer(const Pattern& p) const {
        Pattern d;
        p.for_each([&](int x, int y, int s) { d.set(x, y, symbols.at(s).down ? delta::D : delta::R); });
        return d;
    }
    // Base symbols on the → cells.
    Pattern base_layer(const Pattern& p) const {
        Pattern b;
        p.for_each([&](int x, int y, int s) {
            if (!symbols.at(s).down) b.set(x, y, symbols[s].base);
        });
        return b;
    }
};

// ---------------------------------------------------------------------------
// Local curve geometries: h contiguous curves over w columns.

struct Geometry {
    std::vector<std::vector<int>> y;                  // y[j][i]: row of curve j at column i
    std::vector<std::pair<int, int>> downs;           // shift marks and gap cells
};

namespace detail {

// Each curve above the previous one keeps a gap of 0 or 1 rows: it shifts only over a gap,
// and must shift when the curve below shifts under a gap.
inline void extend_geometry(int w, int h, Geometry& g, std::vector<Geometry>& out) {
    int j = static_cast<int>(g.y.size());
    if (j == h) {
        out.push_back(g);
        return;
    }
    if (j == 0) {
        for (int mask = 0; mask < (1 << (w - 1)); ++mask) {
            std::vector<int> c(w, 0);
            for (int i = 1; i < w; ++i) c[i] = c[i - 1] - ((mask >> (i - 1)) & 1);
            g.y.push_back(c);
            extend_geometry(w, h, g, out);
            g.y.pop_back();
        }
        return;
    }
    const std::vector<int> lower = g.y[j - 1];
    std::vector<int> c(w);
    std::function<void(int, int)> rec = [&](int i, int gap) {
        c[i] = lower[i] + 1 + gap;
        if (i == w - 1) {
            g.y.push_back(c);
            extend_geometry(w, h, g, out);
            g.y.pop_back();
            return;
        }
        int ldrop = lower[i] - lower[i + 1];
        if (gap == 0) {
            rec(i + 1, ldrop);
        } else if (ldrop == 1) {
            rec(i + 1, 1);
        } else {
            rec(i + 1, 1);
            rec(i + 1, 0);
        }
    };
    for (int g0 : {0, 1}) rec(0, g0);
}

}  // namespace detail

inline std::vector<Geometry> geometries(int w, int h) {
    std::vector<Geometry> out;
    Geometry g;
    detail::extend_geometry(w, h, g, out);
    for (auto& geo : out) {
        std::set<std::pair<int, int>> downs;
        for (int j = 0; j < h; ++j)
            for (int i = 0; i < w; ++i) {
                if (i + 1 < w && geo.y[j][i + 1] < geo.y[j][i]) downs.emplace(i + 1, geo.y[j][i]);
                if (j + 1 < h && geo.y[j + 1][i] - geo.y[j][i] == 2) downs.emplace(i, geo.y[j][i] + 1);
            }
        geo.downs.assign(downs.begin(), downs.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Operators

inline std::string arrow_name(const std::string& a) { return kRight + ":" + a; }
inline std::string arrow_name(const std::string& a, int c, int b) {
    return kRight + ":" + a + ":" + std::to_string(c) + ":" + std::to_string(b);
}

namespace detail {

inline json derivation_of(const SftDefinition& x, const std::string& op, const json& bounds) {
    json d;
    if (x.derivation.is_object()) {
        d = x.derivation;
    } else {
        d = json{{"base", x.name.empty() ? std::string("custom") : x.name}, {"operators", json::array()},
                 {"bounds", json::array()}};
    }
    d["operators"].push_back(op);
    d["bounds"].push_back(bounds);
    return d;
}

inline DistortedSft build(const SftDefinition& x, Layers layers) {
    DistortedSft ds;
    ds.base = x;
    ds.layers = layers;
    int r = layers.counter_r.value_or(1);
    std::vector<std::string> alpha;
    for (int a = 0; a < static_cast<int>(x.size()); ++a) {
        if (!layers.counter_r) {
            alpha.push_back(arrow_name(x.alphabet[a]));
            ds.symbols.push_back({false, a, 0, 0});
            continue;
        }
        for (int c = 0; c < r; ++c)
            for (int b = 0; b < (layers.colors ? 2 : 1); ++b) {
                alpha.push_back(arrow_name(x.alphabet[a], c, b));
                ds.symbols.push_back({false, a, c, b});
            }
    }
    ds.down_id = static_cast<int>(alpha.size());
    alpha.push_back(kDown);
    ds.symbols.push_back({true, -1, 0, 0});

    SftDefinition& s = ds.derived;
    s.alphabet = alpha;
    std::size_t n = alpha.size();
    auto set = [&](auto pred) {
        SymbolSet z(n);
        for (std::size_t i = 0; i < n; ++i)
            if (pred(ds.symbols[i])) z.set(i);
        return z;
    };
    SymbolSet arrow = set([](const Symbol& t) { return !t.down; });
    SymbolSet down = set([](const Symbol& t) { return t.down; });

    s.forbid({{0, 0, down}, {0, 1, down}}, "down-over-down");
    s.forbid({{0, 1, arrow}, {1, 1, down}, {0, 0, arrow}, {1, 0, arrow}}, "unsupported-shift");

    int gw = 0, gh = 0;
    for (auto& f : x.forbidden) {
        gw = std::max(gw, f.w);
        gh = std::max(gh, f.h);
        for (auto& geo : geometries(f.w, f.h)) {
            std::map<std::pair<int, int>, SymbolSet> cells;
            for (int j = 0; j < f.h; ++j)
                for (int i = 0; i < f.w; ++i) cells[{i, geo.y[j][i]}] = arrow;
            for (auto& c : f.cells)
                cells[{c.dx, geo.y[c.dy][c.dx]}] =
                    set([&](const Symbol& t) { return !t.down && c.allowed.test(t.base); });
            for (auto& d : geo.downs) cells[d] = down;
            std::vector<ForbiddenCell> fc;
            for (auto& [pos, z] : cells) fc.push_back({pos.first, pos.second, z});
            s.forbid(std::move(fc), "lifted:" + (f.rule.empty() ? std::string("x") : f.rule));
        }
    }

    json bounds{{"geometry_columns", gw}, {"geometry_curves", gh}, {"gap", json::array({0, 1})}};
    if (layers.counter_r) {
        auto counter_is = [&](auto pred) { return set([&](const Symbol& t) { return !t.down && pred(t.counter); }); };
        for (int c = 0; c < r; ++c) {
            int next = (c + 1) % r;
            SymbolSet wrong = counter_is([&](int v) { return v != next; });
            if (wrong.any()) s.forbid({{0, 0, counter_is([&](int v) { return v == c; })}, {1, 0, wrong}}, "counter-step");
        }
        SymbolSet not_last = counter_is([&](int v) { return v != r - 1; });
        if (not_last.any()) s.forbid({{0, 1, not_last}, {1, 1, down}, {0, 0, down}, {1, 0, arrow}}, "shift-at-max");
        SymbolSet not_zero = counter_is([&](int v) { return v != 0; });
        if (not_zero.any())
            s.forbid({{0, 1, counter_is([&](int v) { return v == r - 1; })}, {1, 1, down}, {0, 0, down}, {1, 0, not_zero}},
                     "counter-shift");
        bounds["counter"] = r;
    }
    if (layers.colors) {
        if (r > 1)
            s.forbid({{0, 0, set([&](const Symbol& t) { return !t.down && t.counter < r - 1 && t.color == 0; })},
                      {1, 0, set([&](const Symbol& t) { return !t.down && t.color == 1; })}},
                     "color-order");
        for (int d = -(r - 1); d <= r - 1; ++d)
            for (int dy : {1, -1}) {
                SymbolSet one = set([&](const Symbol& t) {
                    return !t.down && t.color == 1 && d + t.counter >= 0 && d + t.counter <= r - 1;
                });
                s.forbid({{0, 0, one}, {d, dy, down}}, "isolation");
            }
        bounds["isolation_rows"] = 1;
    }
    s.rank = 0;
    s.finalize();
    std::string op = layers.counter_r ? "d_r:" + std::to_string(r) : "d_A";
    s.derivation = derivation_of(x, op, bounds);
    s.name = op + "(" + (x.name.empty() ? std::string("custom") : x.name) + ")";
    return ds;
}

}  // namespace detail

inline DistortedSft distort_sft(const SftDefinition& x) { return detail::build(x, {}); }

inline DistortedSft distort_sft_r(const SftDefinition& x, int r) {
    if (r < 1) throw Error("RZero", "r must be at least 1");
    return detail::build(x, {r, true});
}

// Quarter turn: forbidden cell (a, b) moves to (-b, a).
inline SftDefinition rotate_sft(const SftDefinition& x) {
    SftDefinition s;
    s.alphabet = x.alphabet;
    for (auto& f : x.forbidden) {
        std::vector<ForbiddenCell> cells;
        for (auto& c : f.cells) cells.push_back({-c.dy, c.dx, c.allowed});
        s.forbid(std::move(cells), f.rule);
    }
    s.rank = x.rank;
    s.finalize();
    s.name = "rho(" + (x.name.empty() ? std::string("custom") : x.name) + ")";
    s.derivation = detail::derivation_of(x, "rho", json::object());
    return s;
}

// Torus sizes w, h <= max_period that admit a periodic filling.
inline std::vector<std::pair<int, int>> refute_period(const SftDefinition& x, int max_period) {
    std::vector<std::pair<int, int>> out;
    for (int w = 1; w <= max_period; ++w)
        for (int h = 1; h <= max_period; ++h)
            if (torus_fill(x, w, h)) out.emplace_back(w, h);
    return out;
}

// ---------------------------------------------------------------------------
// Property checks on derived windows

// Counters step by one along each curve and every shift leaves a cell with counter r-1.
inline std::vector<std::string> counter_failures(const DistortedSft& ds, const Pattern& p) {
    std::vector<std::string> out;
    int r = ds.r();
    auto cd = delta::curves(ds.delta_layer(p));
    for (auto& c : cd.curves) {
        for (std::size_t k = 1; k < c.cells.size(); ++k) {
            auto [x0, y0] = c.cells[k - 1];
            auto [x1, y1] = c.cells[k];
            int a = ds.symbols[p.get(x0, y0)].counter, b = ds.symbols[p.get(x1, y1)].counter;
            std::string at = "(" + std::to_string(x0) + "," + std::to_string(y0) + ")";
            if (b != (a + 1) % r) out.push_back("counter does not step at " + at);
            if (y1 != y0 && a != r - 1) out.push_back("shift with counter " + std::to_string(a) + " at " + at);
        }
    }
    return out;
}

// Complete segments carry 1^k 0^(r-k); segments next to a ↓ row carry 0^r.
inline std::vector<std::string> color_failures(const DistortedSft& ds, const Pattern& p) {
    std::vector<std::string> out;
    int r = ds.r();
    auto cd = delta::curves(ds.delta_layer(p));
    for (auto& c : cd.curves) {
        for (std::size_t k = 0; k + r <= c.cells.size(); ++k) {
            if (ds.symbols[p.get(c.cells[k].first, c.cells[k].second)].counter != 0) continue;
            std::string word;
            bool isolated = false;
            for (int i = 0; i < r; ++i) {
                auto [x, y] = c.cells[k + i];
                word += static_cast<char>('0' + ds.symbols[p.get(x, y)].color);
                for (int dy : {1, -1})
                    if (p.defined(x, y + dy) && ds.symbols[p.get(x, y + dy)].down) isolated = true;
            }
            std::size_t ones = word.find_first_not_of('1');
            if (ones == std::string::npos) ones = word.size();
            bool shape = word.find('1', ones) == std::string::npos;
            std::string at = "(" + std::to_string(c.cells[k].first) + "," + std::to_string(c.cells[k].second) + ")";
            if (!shape) out.push_back("color word " + word + " at " + at);
            if (isolated && word != std::string(r, '0')) out.push_back("isolated segment colored " + word + " at " + at);
        }
    }
    return out;
}

}  // namespace sftkit::distort

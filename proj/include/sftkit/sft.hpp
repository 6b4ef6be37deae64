#pragma once

#include "pattern.hpp"

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sftkit {

using BigInt = boost::multiprecision::cpp_int;
using SymbolSet = boost::dynamic_bitset<>;
using nlohmann::json;

// A forbidden cell matches any symbol of its set.
struct ForbiddenCell {
    int dx = 0, dy = 0;
    SymbolSet allowed;
};

struct Forbidden {
    std::vector<ForbiddenCell> cells;  // normalized: min dx = min dy = 0
    std::string rule;
    int w = 0, h = 0;

    int anchor() const {  // last cell in row-major order
        int best = 0;
        for (int k = 1; k < static_cast<int>(cells.size()); ++k) {
            auto& a = cells[k];
            auto& b = cells[best];
            if (a.dy > b.dy || (a.dy == b.dy && a.dx > b.dx)) best = k;
        }
        return best;
    }
};

struct Violation {
    std::size_t forbidden = 0;
    int x = 0, y = 0;  // placement of the forbidden pattern's origin
    std::string rule;
    bool operator==(const Violation&) const = default;
};

class SftDefinition {
public:
    std::string name;
    std::vector<std::string> alphabet;
    std::vector<Forbidden> forbidden;
    int rank = 1;
    json derivation;  // null unless produced by an operator

    SftDefinition() = default;
    SftDefinition(std::vector<std::string> alpha, std::vector<Forbidden> forb, int r = 0, std::string nm = {})
        : name(std::move(nm)), alphabet(std::move(alpha)), forbidden(std::move(forb)), rank(r) {
        finalize();
    }

    std::size_t size() const { return alphabet.size(); }

    int symbol(std::string_view s) const {
        auto it = index_.find(std::string(s));
        if (it == index_.end()) throw Error("UnknownSymbol", "unknown symbol '" + std::string(s) + "'");
        return it->second;
    }
    std::optional<int> find_symbol(std::string_view s) const {
        auto it = index_.find(std::string(s));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    SymbolSet set_of(std::initializer_list<int> syms) const {
        SymbolSet s(size());
        for (int v : syms) s.set(v);
        return s;
    }
    SymbolSet all() const { return SymbolSet(size()).set(); }

    // Adds a forbidden pattern from (x, y, symbol-set) cells, normalizing its support.
    void forbid(std::vector<ForbiddenCell> cells, std::string rule = {}) {
        Forbidden f;
        f.cells = std::move(cells);
        f.rule = std::move(rule);
        forbidden.push_back(std::move(f));
    }
    void forbid_symbols(const std::vector<std::tuple<int, int, int>>& cells, std::string rule = {}) {
        std::vector<ForbiddenCell> cs;
        for (auto [x, y, s] : cells) cs.push_back({x, y, set_of({s})});
        forbid(std::move(cs), std::move(rule));
    }

    // Validates invariants, normalizes supports and builds the lookup tables.
    void finalize() {
        if (alphabet.empty()) throw Error("InvalidSft", "alphabet is empty");
        index_.clear();
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            if (!index_.emplace(alphabet[i], static_cast<int>(i)).second)
                throw Error("InvalidSft", "duplicate symbol '" + alphabet[i] + "'");
        int need = 1;
        for (auto& f : forbidden) {
            if (f.cells.empty()) throw Error("InvalidSft", "empty forbidden pattern");
            int mx = INT_MAX, my = INT_MAX, Mx = INT_MIN, My = INT_MIN;
            for (auto& c : f.cells) {
                if (c.allowed.size() != alphabet.size()) c.allowed.resize(alphabet.size());
                mx = std::min(mx, c.dx), my = std::min(my, c.dy);
                Mx = std::max(Mx, c.dx), My = std::max(My, c.dy);
            }
            for (auto& c : f.cells) c.dx -= mx, c.dy -= my;
            std::sort(f.cells.begin(), f.cells.end(),
                      [](auto& a, auto& b) { return std::pair(a.dy, a.dx) < std::pair(b.dy, b.dx); });
            f.w = Mx - mx + 1;
            f.h = My - my + 1;
            need = std::max({need, f.w, f.h});
        }
        if (rank <= 0 || rank_auto_) {
            rank = need;
            rank_auto_ = true;
        }
        if (rank < need) throw Error("InvalidSft", "forbidden pattern exceeds rank");
        by_anchor_.assign(alphabet.size(), {});
        for (std::size_t fi = 0; fi < forbidden.size(); ++fi) {
            auto& a = forbidden[fi].cells[forbidden[fi].anchor()].allowed;
            for (auto s = a.find_first(); s != SymbolSet::npos; s = a.find_next(s))
                by_anchor_[s].push_back(static_cast<int>(fi));
        }
    }

    const std::vector<int>& anchored_at(int s) const { return by_anchor_[s]; }

private:
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> by_anchor_;
    bool rank_auto_ = false;
};

inline void check_symbols(const SftDefinition& sft, const Pattern& p) {
    p.for_each([&](int x, int y, int s) {
        if (s < 0 || s >= static_cast<int>(sft.size()))
            throw Error("UnknownSymbol",
                        "symbol id " + std::to_string(s) + " at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    });
}

inline bool matches_at(const Forbidden& f, const Pattern& p, int ox, int oy) {
    for (auto& c : f.cells) {
        int v = p.get(ox + c.dx, oy + c.dy);
        if (v == kUndef || !c.allowed.test(v)) return false;
    }
    return true;
}

inline std::vector<Violation> check_pattern(const SftDefinition& sft, const Pattern& p) {
    check_symbols(sft, p);
    std::vector<Violation> out;
    p.for_each([&](int x, int y, int s) {
        for (int fi : sft.anchored_at(s)) {
            auto& f = sft.forbidden[fi];
            auto& a = f.cells[f.anchor()];
            int ox = x - a.dx, oy = y - a.dy;
            if (matches_at(f, p, ox, oy)) out.push_back({static_cast<std::size_t>(fi), ox, oy, f.rule});
        }
    });
    std::sort(out.begin(), out.end(),
              [](auto& a, auto& b) { return std::tuple(a.y, a.x, a.forbidden) < std::tuple(b.y, b.x, b.forbidden); });
    return out;
}

inline bool admissible(const SftDefinition& sft, const Pattern& p) { return check_pattern(sft, p).empty(); }

// ---------------------------------------------------------------------------
// Fill engine: a w*h grid (optionally a torus) with every forbidden placement
// compiled to a list of grid cells, grouped by the cell filled last.

class Grid {
public:
    int w = 0, h = 0;
    bool wrap = false;

    Grid(const SftDefinition& sft, int w_, int h_, bool torus) : w(w_), h(h_), wrap(torus), sft_(&sft) {
        by_last_.assign(static_cast<std::size_t>(w) * h, {});
        for (std::size_t fi = 0; fi < sft.forbidden.size(); ++fi) {
            auto& f = sft.forbidden[fi];
            int oxs = wrap ? w : w - f.w + 1, oys = wrap ? h : h - f.h + 1;
            for (int oy = 0; oy < oys; ++oy)
                for (int ox = 0; ox < oxs; ++ox) {
                    int last = -1;
                    uint32_t off = static_cast<uint32_t>(flat_.size());
                    for (auto& c : f.cells) {
                        int x = ((ox + c.dx) % w + w) % w, y = ((oy + c.dy) % h + h) % h;
                        int i = y * w + x;
                        flat_.push_back(i);
                        last = std::max(last, i);
                    }
                    by_last_[last].push_back({static_cast<uint32_t>(fi), off});
                }
        }
    }

    int cells() const { return w * h; }
    const SftDefinition& sft() const { return *sft_; }

    // True if no constraint whose last cell is i is violated by vals.
    bool ok_at(int i, const std::vector<int>& vals) const {
        for (auto& c : by_last_[i]) {
            auto& f = sft_->forbidden[c.f];
            bool hit = true;
            for (std::size_t k = 0; k < f.cells.size(); ++k) {
                int v = vals[flat_[c.off + k]];
                if (v == kUndef || !f.cells[k].allowed.test(v)) {
                    hit = false;
                    break;
                }
            }
            if (hit) return false;
        }
        return true;
    }

    // Cells read by the constraints of cell i.
    template <class F>
    void cells_of(int i, F&& fn) const {
        for (auto& c : by_last_[i]) {
            auto& f = sft_->forbidden[c.f];
            for (std::size_t k = 0; k < f.cells.size(); ++k) fn(flat_[c.off + k]);
        }
    }

    // Depth-first search in row-major cell order, alphabet order at each cell.
    // fixed[i] != kUndef pins cell i. on_solution returns false to stop.
    // Returns false if max_steps (0 = unbounded) cell assignments were tried before finishing.
    template <class F>
    bool search(const std::vector<int>& fixed, F&& on_solution, int upto = -1, std::size_t max_steps = 0) const {
        int n = upto < 0 ? cells() : upto;
        int a = static_cast<int>(sft_->size());
        std::vector<int> vals(cells(), kUndef);
        if (n == 0) {
            on_solution(vals);
            return true;
        }
        int i = 0;
        std::size_t steps = 0;
        while (i >= 0) {
            if (max_steps && ++steps > max_steps) return false;
            int start = vals[i] == kUndef ? 0 : vals[i] + 1;
            int next = kUndef;
            if (fixed[i] != kUndef) {
                if (vals[i] == kUndef) {
                    vals[i] = fixed[i];
                    if (ok_at(i, vals)) next = fixed[i];
                }
            } else {
                for (int s = start; s < a; ++s) {
                    vals[i] = s;
                    if (ok_at(i, vals)) {
                        next = s;
                        break;
                    }
                }
            }
            if (next == kUndef) {
                vals[i] = kUndef;
                --i;
                continue;
            }
            if (i == n - 1) {
                if (!on_solution(vals)) return true;
                if (fixed[i] != kUndef) {
                    vals[i] = kUndef;
                    --i;
                }
                continue;
            }
            ++i;
        }
        return true;
    }

    Pattern to_pattern(const std::vector<int>& vals, int x0 = 0, int y0 = 0) const {
        Pattern p(x0, y0, w, h);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) p.set(x0 + x, y0 + y, vals[y * w + x]);
        return p;
    }

private:
    struct Con {
        uint32_t f, off;
    };
    const SftDefinition* sft_;
    std::vector<std::vector<Con>> by_last_;
    std::vector<int> flat_;
};

// First admissible filling of target agreeing with p (search order row-major, alphabet order).
// With max_steps > 0, throws BudgetExceeded when the search is cut off before an answer.
inline std::optional<Pattern> extend_pattern(const SftDefinition& sft, const Pattern& p, const Rect& target,
                                             std::size_t max_steps = 0) {
    check_symbols(sft, p);
    if (!target.contains(p.trimmed().box())) throw Error("OutsideTarget", "pattern support not inside target");
    Grid g(sft, target.w, target.h, false);
    std::vector<int> fixed(g.cells(), kUndef);
    p.for_each([&](int x, int y, int s) { fixed[(y - target.y0) * target.w + (x - target.x0)] = s; });
    std::optional<Pattern> out;
    bool done = g.search(
        fixed,
        [&](const std::vector<int>& v) {
            out = g.to_pattern(v, target.x0, target.y0);
            return false;
        },
        -1, max_steps);
    if (!done && !out) throw Error("BudgetExceeded", "extension search step budget exceeded");
    return out;
}

// First admissible w*h torus filling agreeing with the pinned cells (coordinates taken mod w, h).
inline std::optional<Pattern> torus_fill(const SftDefinition& sft, int w, int h, const Pattern& pinned = {}) {
    Grid g(sft, w, h, true);
    std::vector<int> fixed(g.cells(), kUndef);
    bool clash = false;
    pinned.for_each([&](int x, int y, int s) {
        int i = ((y % h + h) % h) * w + ((x % w + w) % w);
        if (fixed[i] != kUndef && fixed[i] != s) clash = true;
        fixed[i] = s;
    });
    if (clash) return std::nullopt;
    std::optional<Pattern> out;
    g.search(fixed, [&](const std::vector<int>& v) {
        out = g.to_pattern(v);
        return false;
    });
    return out;
}

// A locally admissible w*h filling drawn by backtracking with a random symbol order at each cell.
template <class Rng>
std::optional<Pattern> random_fill(const SftDefinition& sft, int w, int h, Rng& rng, std::size_t max_steps = 1'000'000) {
    Grid g(sft, w, h, false);
    int n = g.cells(), a = static_cast<int>(sft.size());
    std::vector<int> vals(n, kUndef);
    std::vector<std::vector<int>> order(n);
    std::vector<int> pos(n, 0);
    int i = 0;
    for (std::size_t step = 0; i < n && step < max_steps; ++step) {
        if (i < 0) return std::nullopt;
        if (order[i].empty()) {
            order[i].resize(a);
            for (int s = 0; s < a; ++s) order[i][s] = s;
            std::shuffle(order[i].begin(), order[i].end(), rng);
            pos[i] = 0;
        }
        bool placed = false;
        while (pos[i] < a && !placed) {
            vals[i] = order[i][pos[i]++];
            placed = g.ok_at(i, vals);
        }
        if (placed) {
            ++i;
        } else {
            vals[i] = kUndef;
            order[i].clear();
            --i;
        }
    }
    if (i < n) return std::nullopt;
    return g.to_pattern(vals);
}

// Violations of the periodic tiling generated by a w*h fundamental domain.
inline std::vector<Violation> torus_violations(const SftDefinition& sft, const Pattern& domain) {
    Pattern d = domain.normalized();
    int w = d.width(), h = d.height();
    int m = sft.rank;
    Pattern big(0, 0, w + 2 * m, h + 2 * m);
    for (int y = 0; y < h + 2 * m; ++y)
        for (int x = 0; x < w + 2 * m; ++x) big.set(x, y, d.get(x % w, y % h));
    return check_pattern(sft, big);
}

// ---------------------------------------------------------------------------
// Transfer counting over row-major cell order with a sliding window of cells.

namespace detail {

struct StripCounter {
    const SftDefinition& sft;
    int w;

    struct Rel {
        int f;
        std::vector<int> back;  // distance back from the current cell, per forbidden cell
    };

    // Constraints anchored at column x, for rows y >= need_y.
    std::vector<std::vector<std::pair<int, Rel>>> per_x;
    int window = 0;

    StripCounter(const SftDefinition& s, int width) : sft(s), w(width) {
        if (sft.size() > 250) throw Error("AlphabetTooLarge", "transfer counting supports at most 250 symbols");
        per_x.assign(w, {});
        for (std::size_t fi = 0; fi < sft.forbidden.size(); ++fi) {
            auto& f = sft.forbidden[fi];
            auto& a = f.cells[f.anchor()];
            for (int x = 0; x < w; ++x) {
                int ox = x - a.dx;
                if (ox < 0 || ox + f.w > w) continue;
                Rel r{static_cast<int>(fi), {}};
                for (auto& c : f.cells) {
                    int b = (a.dy - c.dy) * w + (a.dx - c.dx);
                    r.back.push_back(b);
                    window = std::max(window, b);
                }
                per_x[x].push_back({f.h - 1, std::move(r)});
            }
        }
    }

    // Sum of counts after each completed row, rows 1..H. `domain(x, y, s)` restricts cell values.
    std::vector<BigInt> run(int H, std::size_t state_budget,
                            const std::function<bool(int, int, int)>& domain = {}) const {
        std::unordered_map<std::string, BigInt> cur, nxt;
        cur.emplace(std::string(window, '\0'), 1);
        std::vector<BigInt> out;
        int a = static_cast<int>(sft.size());
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < w; ++x) {
                nxt.clear();
                for (auto& [st, cnt] : cur) {
                    for (int s = 0; s < a; ++s) {
                        if (domain && !domain(x, y, s)) continue;
                        if (!allowed(st, x, y, s)) continue;
                        std::string ns = window ? st.substr(1) + static_cast<char>(s + 1) : std::string();
                        nxt[ns] += cnt;
                    }
                }
                std::swap(cur, nxt);
                if (cur.size() > state_budget) throw Error("BudgetExceeded", "transfer state budget exceeded");
            }
            BigInt total = 0;
            for (auto& [st, cnt] : cur) total += cnt;
            out.push_back(total);
        }
        return out;
    }

    bool allowed(const std::string& st, int x, int y, int s) const {
        for (auto& [need_y, r] : per_x[x]) {
            if (y < need_y) continue;
            auto& f = sft.forbidden[r.f];
            bool hit = true;
            for (std::size_t k = 0; k < f.cells.size() && hit; ++k) {
                int b = r.back[k];
                int v = b == 0 ? s : static_cast<unsigned char>(st[window - b]) - 1;
                if (v < 0 || !f.cells[k].allowed.test(v)) hit = false;
            }
            if (hit) return false;
        }
        return true;
    }
};

// Number of admissible w*h torus fillings: enumerate the first rank-1 rows,
// then run the transfer count on the remaining rows with wrapped constraints.
inline BigInt torus_count(const SftDefinition& sft, int w, int h, std::size_t budget) {
    Grid g(sft, w, h, true);
    int band = std::min(h, std::max(1, sft.rank - 1)) * w;
    if (band >= g.cells()) {
        BigInt n = 0;
        g.search(std::vector<int>(g.cells(), kUndef), [&](const std::vector<int>&) {
            ++n;
            return true;
        });
        return n;
    }
    int win = std::min(g.cells() - band, sft.rank * w);
    for (int i = band; i < g.cells(); ++i)
        g.cells_of(i, [&](int c) {
            if (c >= band && c < i - win) throw Error("InternalError", "torus window too small");
        });
    BigInt total = 0;
    std::size_t bands = 0;
    int a = static_cast<int>(sft.size());
    g.search(
        std::vector<int>(g.cells(), kUndef),
        [&](const std::vector<int>& start) {
            if (++bands > budget) throw Error("BudgetExceeded", "torus start-band budget exceeded");
            std::map<std::vector<int>, BigInt> cur, nxt;
            cur.emplace(std::vector<int>(win, kUndef), 1);
            std::vector<int> vals = start;
            for (int i = band; i < g.cells(); ++i) {
                nxt.clear();
                for (auto& [st, cnt] : cur) {
                    for (int k = 0; k < win; ++k)
                        if (i - win + k >= band) vals[i - win + k] = st[k];
                    for (int s = 0; s < a; ++s) {
                        vals[i] = s;
                        if (!g.ok_at(i, vals)) continue;
                        std::vector<int> ns(st.begin() + 1, st.end());
                        ns.push_back(s);
                        nxt[ns] += cnt;
                    }
                    vals[i] = kUndef;
                }
                std::swap(cur, nxt);
                if (cur.size() > budget) throw Error("BudgetExceeded", "torus state budget exceeded");
            }
            for (auto& [st, cnt] : cur) total += cnt;
            return true;
        },
        band);
    return total;
}

}  // namespace detail

enum class Boundary { free, periodic };

struct TransferCount {
    int width = 0;
    std::vector<BigInt> counts_by_height;  // index h-1
    Boundary boundary = Boundary::free;
};

inline TransferCount strip_counts(const SftDefinition& sft, int width, int max_height, Boundary boundary,
                                  std::size_t budget = 2'000'000) {
    if (width < sft.rank) throw Error("WidthTooSmall", "strip width below rank");
    TransferCount tc{width, {}, boundary};
    if (boundary == Boundary::free) {
        tc.counts_by_height = detail::StripCounter(sft, width).run(max_height, budget);
    } else {
        for (int h = 1; h <= max_height; ++h) tc.counts_by_height.push_back(detail::torus_count(sft, width, h, budget));
    }
    return tc;
}

// Free count of admissible w*h rectangles.
inline BigInt count_rectangles(const SftDefinition& sft, int w, int h, std::size_t budget = 2'000'000) {
    return detail::StripCounter(sft, w).run(h, budget).back();
}

// Free count of admissible w*h rectangles whose cells satisfy domain(x, y, symbol).
inline BigInt count_rectangles_in(const SftDefinition& sft, int w, int h,
                                  const std::function<bool(int, int, int)>& domain, std::size_t budget = 2'000'000) {
    return detail::StripCounter(sft, w).run(h, budget, domain).back();
}

inline BigInt count_blocks(const SftDefinition& sft, int n) {
    if (n < 1) throw Error("InvalidArgument", "n must be positive");
    return count_rectangles(sft, n, n);
}

inline std::vector<Pattern> collect_blocks(const SftDefinition& sft, int n, std::size_t limit = 5'000'000) {
    if (n < 1) throw Error("InvalidArgument", "n must be positive");
    Grid g(sft, n, n, false);
    std::vector<Pattern> out;
    g.search(std::vector<int>(g.cells(), kUndef), [&](const std::vector<int>& v) {
        if (out.size() >= limit) throw Error("BudgetExceeded", "too many blocks to collect");
        out.push_back(g.to_pattern(v));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline json pattern_to_json(const Pattern& p, const std::vector<std::string>& alphabet) {
    json cells = json::array();
    p.for_each([&](int x, int y, int s) { cells.push_back({x, y, alphabet.at(s)}); });
    return json{{"cells", cells}};
}

inline Pattern pattern_from_json(const json& j, const SftDefinition& sft) {
    Pattern p;
    for (auto& c : j.at("cells")) {
        if (!c.is_array() || c.size() != 3) throw Error("InvalidJson", "pattern cell must be [x, y, symbol]");
        int x = c[0].get<int>(), y = c[1].get<int>();
        if (p.defined(x, y)) throw Error("InvalidJson", "duplicate coordinate in pattern");
        p.set(x, y, sft.symbol(c[2].get<std::string>()));
    }
    return p;
}

inline json sft_to_json(const SftDefinition& sft) {
    json forb = json::array();
    for (auto& f : sft.forbidden) {
        json cells = json::array();
        for (auto& c : f.cells) {
            if (c.allowed.count() == 1) {
                cells.push_back({c.dx, c.dy, sft.alphabet[c.allowed.find_first()]});
            } else {
                json set = json::array();
                for (auto s = c.allowed.find_first(); s != SymbolSet::npos; s = c.allowed.find_next(s))
                    set.push_back(sft.alphabet[s]);
                cells.push_back({c.dx, c.dy, set});
            }
        }
        json e{{"cells", cells}};
        if (!f.rule.empty()) e["rule"] = f.rule;
        forb.push_back(e);
    }
    json j{{"alphabet", sft.alphabet}, {"forbidden", forb}, {"rank", sft.rank}};
    if (!sft.name.empty()) j["name"] = sft.name;
    if (!sft.derivation.is_null()) j["derivation"] = sft.derivation;
    return j;
}

inline SftDefinition sft_from_json(const json& j) {
    SftDefinition s;
    s.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    s.rank = j.value("rank", 0);
    s.name = j.value("name", std::string());
    if (j.contains("derivation")) s.derivation = j["derivation"];
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < s.alphabet.size(); ++i) idx[s.alphabet[i]] = static_cast<int>(i);
    auto lookup = [&](const std::string& v) {
        auto it = idx.find(v);
        if (it == idx.end()) throw Error("UnknownSymbol", "forbidden pattern uses unknown symbol '" + v + "'");
        return it->second;
    };
    for (auto& f : j.at("forbidden")) {
        std::vector<ForbiddenCell> cells;
        for (auto& c : f.at("cells")) {
            ForbiddenCell fc{c.at(0).get<int>(), c.at(1).get<int>(), SymbolSet(s.alphabet.size())};
            if (c.at(2).is_array())
                for (auto& v : c[2]) fc.allowed.set(lookup(v.get<std::string>()));
            else
                fc.allowed.set(lookup(c[2].get<std::string>()));
            cells.push_back(std::move(fc));
        }
        s.forbid(std::move(cells), f.value("rule", std::string()));
    }
    s.finalize();
    return s;
}

}  // namespace sftkit

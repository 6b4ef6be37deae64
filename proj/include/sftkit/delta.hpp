#pragma once

#include "builtin.hpp"

#include <map>
#include <string>
#include <vector>

namespace sftkit::delta {

constexpr int R = 0;  // →
constexpr int D = 1;  // ↓

inline const SftDefinition& sft() {
    static const SftDefinition s = builtin::delta();
    return s;
}

// Rows top to bottom, '.' for an undefined cell; lower-left corner at the origin.
inline Pattern from_rows(const std::vector<std::string>& rows) {
    std::vector<std::vector<int>> cells;
    for (auto& r : rows) {
        std::vector<int> row;
        for (std::size_t i = 0; i < r.size();) {
            if (r.compare(i, kRight.size(), kRight) == 0) {
                row.push_back(R);
                i += kRight.size();
            } else if (r.compare(i, kDown.size(), kDown) == 0) {
                row.push_back(D);
                i += kDown.size();
            } else if (r[i] == '.' || r[i] == ' ') {
                row.push_back(kUndef);
                ++i;
            } else {
                throw Error("InvalidPattern", "unexpected character in delta row '" + r + "'");
            }
        }
        cells.push_back(std::move(row));
    }
    return Pattern::from_rows(cells);
}

inline std::vector<std::string> to_rows(const Pattern& p) {
    std::vector<std::string> out;
    for (int y = p.y0() + p.height() - 1; y >= p.y0(); --y) {
        std::string row;
        for (int x = p.x0(); x < p.x0() + p.width(); ++x) {
            int v = p.get(x, y);
            row += v == R ? kRight : v == D ? kDown : std::string(".");
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline std::vector<Violation> delta_check(const Pattern& p) { return check_pattern(sft(), p); }

// ---------------------------------------------------------------------------
// Curves

enum class Entry { left, top, interior };

inline const char* entry_name(Entry e) {
    static const char* n[] = {"left", "top", "interior"};
    return n[static_cast<int>(e)];
}

struct Curve {
    int id = 0;
    std::vector<std::pair<int, int>> cells;  // left to right
    Entry entry = Entry::left;
    std::vector<int> shift_columns;  // x of each ↓ the curve passes under
};

struct CurveDecomposition {
    std::vector<Curve> curves;
    int crossing = 0;  // chains starting on or above the SW-NE diagonal of the window
    int strict = 0;    // chains entering through the left or top side

    std::size_t count() const { return curves.size(); }
};

// Next cell of the curve through the → at (x, y), if inside the pattern.
inline std::optional<std::pair<int, int>> successor(const Pattern& p, int x, int y) {
    int n = p.get(x + 1, y);
    if (n == R) return std::pair(x + 1, y);
    if (n == D && p.get(x + 1, y - 1) == R) return std::pair(x + 1, y - 1);
    return std::nullopt;
}

inline bool has_predecessor(const Pattern& p, int x, int y) {
    return p.get(x - 1, y) == R || (p.get(x - 1, y + 1) == R && p.get(x, y + 1) == D);
}

inline CurveDecomposition curves(const Pattern& p) {
    if (!delta_check(p).empty()) throw Error("NotAdmissible", "pattern violates the delta rules");
    CurveDecomposition cd;
    std::vector<std::pair<int, int>> starts;
    for (int x = p.x0(); x < p.x0() + p.width(); ++x)
        for (int y = p.y0(); y < p.y0() + p.height(); ++y)
            if (p.get(x, y) == R && !has_predecessor(p, x, y)) starts.emplace_back(x, y);
    for (auto [sx, sy] : starts) {
        Curve c;
        c.id = static_cast<int>(cd.curves.size());
        if (!p.defined(sx - 1, sy))
            c.entry = Entry::left;
        else if (!p.defined(sx - 1, sy + 1) || !p.defined(sx, sy + 1))
            c.entry = Entry::top;
        else
            c.entry = Entry::interior;
        std::optional<std::pair<int, int>> cur = std::pair(sx, sy);
        while (cur) {
            c.cells.push_back(*cur);
            auto nxt = successor(p, cur->first, cur->second);
            if (nxt && nxt->second != cur->second) c.shift_columns.push_back(nxt->first);
            cur = nxt;
        }
        if (sy - p.y0() >= sx - p.x0()) ++cd.crossing;
        if (c.entry != Entry::interior) ++cd.strict;
        cd.curves.push_back(std::move(c));
    }
    return cd;
}

struct DiagonalCount {
    int arrows = 0;  // → on the SW-NE diagonal
    int shifts = 0;  // [→↓ / ·→] with the ↓ on the diagonal
    int total() const { return arrows + shifts; }
};

inline DiagonalCount diagonal_counts(const Pattern& p) {
    DiagonalCount d;
    int n = std::min(p.width(), p.height());
    for (int i = 0; i < n; ++i) {
        int x = p.x0() + i, y = p.y0() + i;
        if (p.get(x, y) == R) ++d.arrows;
        if (p.get(x, y) == D && p.get(x - 1, y) == R && p.get(x, y - 1) == R) ++d.shifts;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Completion of blocks

namespace detail {

inline void put(Pattern& p, int x, int y, int s) {
    if (p.defined(x, y)) throw Error("InternalError", "completion overwrote a defined cell");
    p.set(x, y, s);
}

inline int top_row(const Pattern& p) { return p.y0() + p.height() - 1; }

inline bool straight_row(const Pattern& p, int y, int xl, int xr) {
    for (int x = xl; x <= xr; ++x)
        if (p.get(x, y) != R) return false;
    return true;
}

inline int topmost(const Pattern& p, int x) {
    for (int y = top_row(p); y >= p.y0(); --y)
        if (p.defined(x, y)) return y;
    throw Error("InternalError", "empty column");
}

inline int bottommost(const Pattern& p, int x) {
    for (int y = p.y0(); y <= top_row(p); ++y)
        if (p.defined(x, y)) return y;
    throw Error("InternalError", "empty column");
}

}  // namespace detail

inline Pattern complete_T(const Pattern& in) {
    using detail::put;
    if (!in.is_full()) throw Error("InvalidArgument", "complete_T expects a rectangular block");
    if (!delta_check(in).empty()) throw Error("NotAdmissible", "block violates the delta rules");
    Pattern p = in;
    int xl = p.x0(), xr = p.x0() + p.width() - 1;
    if (p.width() == 1 && p.height() == 1) {
        if (p.get(xl, p.y0()) == R) return p;
        Pattern q = from_rows({"→→→", "→↓↓", "↓→→", "→→→"});
        return q.shifted(xl, p.y0() - 1);
    }

    // Curves entering from above or leaving below are extended row by row.
    for (;;) {
        int y = detail::top_row(p);
        std::vector<int> xs;
        for (int x = xl; x < xr; ++x)
            if (p.get(x, y) == D && p.get(x + 1, y) == R) xs.push_back(x);
        if (xs.empty()) break;
        for (int x : xs) put(p, x + 1, y + 1, D);
        for (int x : xs)
            for (int c = x; c >= xl && !p.defined(c, y + 1); --c) put(p, c, y + 1, R);
    }
    for (;;) {
        int y = p.y0();
        std::vector<int> xs;
        for (int x = xl; x < xr; ++x)
            if (p.get(x, y) == R && p.get(x + 1, y) == D) xs.push_back(x);
        if (xs.empty()) break;
        for (int x : xs) put(p, x, y - 1, D);
        for (int x : xs)
            for (int c = x + 1; c <= xr && !p.defined(c, y - 1); ++c) put(p, c, y - 1, R);
    }

    // New curves on top and bottom, straighter each time.
    while (!detail::straight_row(p, detail::top_row(p), xl, xr)) {
        int y = detail::topmost(p, xr);
        if (p.get(xr, y) == R) {
            ++y;
            put(p, xr, y, D);
            for (int c = xr - 1; c >= xl && !p.defined(c, y); --c) put(p, c, y, D);
        }
        int x = xr;
        ++y;
        put(p, x, y, R);
        while (x > xl) {
            if (!p.defined(x - 1, y)) {
                put(p, --x, y, R);
            } else {
                put(p, x, y + 1, D);
                put(p, --x, ++y, R);
            }
        }
    }
    // Below, the new curve runs left to right as straight as the curve above allows:
    // it sits one or two rows under the lowest cell, two when that cell is a → about to shift.
    for (int guard = 0; !detail::straight_row(p, p.y0(), xl, xr); ++guard) {
        if (guard > 4 * (p.width() + p.height())) throw Error("InternalError", "bottom completion does not terminate");
        std::vector<int> lo, hi, low;
        for (int x = xl; x <= xr; ++x) {
            int b = detail::bottommost(p, x);
            low.push_back(b);
            if (p.get(x, b) == D) {
                lo.push_back(b - 1);
                hi.push_back(b - 1);
            } else {
                lo.push_back(b - 2);
                hi.push_back(b - 1 - (p.get(x + 1, b) == D));
            }
        }
        int y = lo[0];
        for (int i = 0; i < static_cast<int>(lo.size()); ++i) {
            if (i > 0 && y > hi[i]) --y;
            if (y < lo[i] || y > hi[i]) throw Error("InternalError", "no room for the bottom curve");
            put(p, xl + i, y, R);
            for (int g = y + 1; g < low[i]; ++g) put(p, xl + i, g, D);
        }
    }
    if (!p.is_full()) throw Error("InternalError", "completion left undefined cells");

    // Equalize curves and columns.
    int curves_n = 0;
    for (int y = p.y0(); y <= detail::top_row(p); ++y) curves_n += p.get(xl, y) == R;
    int cols = p.width();
    int y0 = p.y0(), y1 = detail::top_row(p);
    for (int k = 1; k <= curves_n - cols; ++k)
        for (int y = y0; y <= y1; ++y) put(p, xr + k, y, p.get(xr, y));
    for (int k = 1; k <= cols - curves_n; ++k)
        for (int x = xl; x <= xr; ++x) put(p, x, y1 + k, R);
    return p;
}

// Appends columns until the last column has no → directly above a ↓.
inline Pattern compactify(const Pattern& in) {
    if (!delta_check(in).empty()) throw Error("NotAdmissible", "pattern violates the delta rules");
    Pattern p = in;
    for (;;) {
        int c = p.x0() + p.width() - 1;
        bool gap = false;
        for (int y = p.y0(); y < detail::top_row(p); ++y)
            if (p.get(c, y) == D && p.get(c, y + 1) == R) gap = true;
        if (!gap) break;
        std::vector<std::pair<int, int>> col;
        for (int y = p.y0(); y <= detail::top_row(p); ++y) {
            int v = p.get(c, y);
            if (v == D && p.get(c, y + 1) == R)
                col.emplace_back(y, R);
            else if (v == R && p.get(c, y - 1) == D)
                col.emplace_back(y, D);
            else if (v == R)
                col.emplace_back(y, R);
        }
        for (auto [y, s] : col) p.set(c + 1, y, s);
    }
    return p;
}

// Shifts the compact block of curves leaving the last column down t times.
inline Pattern shift_curves(const Pattern& in, int t, bool complete = true) {
    using detail::put;
    if (t < 1) throw Error("InvalidArgument", "t must be at least 1");
    if (!delta_check(in).empty()) throw Error("NotAdmissible", "pattern violates the delta rules");
    Pattern p = in;
    int c = p.x0() + p.width() - 1;
    std::vector<int> ys;
    for (int y = p.y0(); y <= detail::top_row(p); ++y)
        if (p.get(c, y) == R) ys.push_back(y);
    if (ys.empty()) return p;
    int m = static_cast<int>(ys.size()), yb = ys.front();
    if (ys.back() - yb + 1 != m) throw Error("NotCompact", "curves in the last column are not contiguous");
    std::vector<std::pair<int, int>> frontier;
    for (int i = 0; i < m; ++i) {
        for (int k = 1; k <= i; ++k) put(p, c + k, yb + i, R);
        put(p, c + 1 + i, yb + i, D);
        frontier.emplace_back(c + 1 + i, yb + i);
    }
    for (int rep = 1; rep < t; ++rep)
        for (auto& [x, y] : frontier) {
            put(p, x, y - 1, R);
            put(p, x + 1, y - 1, D);
            ++x, --y;
        }
    for (auto [x, y] : frontier) put(p, x, y - 1, R);
    if (complete) {
        int last = c + m + t - 1;
        for (int y = p.y0(); y <= detail::top_row(p); ++y)
            for (int x = c + 1; x < last; ++x)
                if (p.get(x, y) == R && !p.defined(x + 1, y)) put(p, x + 1, y, R);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Pseudo-projection

// Curves running from the first to the last column of the window, bottom to top.
inline std::vector<Curve> spanning_curves(const Pattern& d) {
    std::vector<Curve> out;
    int xl = d.x0(), xr = d.x0() + d.width() - 1;
    for (auto& c : curves(d).curves)
        if (c.entry == Entry::left && c.cells.front().first == xl && c.cells.back().first == xr)
            out.push_back(c);
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.cells.front().second < b.cells.front().second; });
    return out;
}

// Row j of the result is the X layer read along the j-th spanning curve.
inline Pattern pseudo_project(const Pattern& d, const Pattern& xs) {
    bool bad = false;
    xs.for_each([&](int x, int y, int) {
        if (d.get(x, y) != R) bad = true;
    });
    if (bad) throw Error("NotAdmissible", "symbol superimposed on a cell that is not →");
    auto cs = spanning_curves(d);
    Pattern out;
    for (std::size_t j = 0; j < cs.size(); ++j)
        for (std::size_t i = 0; i < cs[j].cells.size(); ++i) {
            auto [x, y] = cs[j].cells[i];
            if (!xs.defined(x, y)) throw Error("NotAdmissible", "curve cell without a symbol");
            out.set(static_cast<int>(i), static_cast<int>(j), xs.get(x, y));
        }
    return out;
}

// Writes row j of y along the j-th spanning curve of d.
inline Pattern embed_along(const Pattern& d, const Pattern& y) {
    Pattern n = y.normalized();
    auto cs = spanning_curves(d);
    if (static_cast<int>(cs.size()) != n.height() || d.width() != n.width())
        throw Error("InvalidArgument", "curve count or width does not match the pattern");
    Pattern out;
    for (int j = 0; j < n.height(); ++j)
        for (int i = 0; i < n.width(); ++i) {
            auto [x, yy] = cs[j].cells[i];
            if (n.defined(i, j)) out.set(x, yy, n.get(i, j));
        }
    return out;
}

// Straight curves carrying y: the identity embedding.
inline std::pair<Pattern, Pattern> embed_straight(const Pattern& y) {
    Pattern n = y.normalized();
    return {Pattern(0, 0, n.width(), n.height(), R), n};
}

}  // namespace sftkit::delta

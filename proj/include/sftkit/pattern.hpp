#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sftkit {

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& what) : std::runtime_error(what), code(std::move(c)) {}
};

constexpr int kUndef = -1;

struct Rect {
    int x0 = 0, y0 = 0, w = 0, h = 0;

    bool contains(int x, int y) const { return x >= x0 && y >= y0 && x < x0 + w && y < y0 + h; }
    bool contains(const Rect& r) const {
        return r.w == 0 || r.h == 0 || (r.x0 >= x0 && r.y0 >= y0 && r.x0 + r.w <= x0 + w && r.y0 + r.h <= y0 + h);
    }
    bool operator==(const Rect&) const = default;
};

// Finite partial map Z^2 -> symbol, stored densely over its bounding box.
// y grows upwards; storage is row-major with row 0 at the bottom.
class Pattern {
public:
    Pattern() = default;
    Pattern(int x0, int y0, int w, int h, int fill = kUndef)
        : x0_(x0), y0_(y0), w_(w), h_(h), cells_(static_cast<std::size_t>(w) * h, fill) {}

    // Rows given top to bottom, lower-left corner at the origin.
    static Pattern from_rows(const std::vector<std::vector<int>>& rows) {
        int h = static_cast<int>(rows.size());
        int w = 0;
        for (auto& r : rows) w = std::max(w, static_cast<int>(r.size()));
        Pattern p(0, 0, w, h);
        for (int r = 0; r < h; ++r)
            for (int x = 0; x < static_cast<int>(rows[r].size()); ++x) p.set(x, h - 1 - r, rows[r][x]);
        return p;
    }

    int x0() const { return x0_; }
    int y0() const { return y0_; }
    int width() const { return w_; }
    int height() const { return h_; }
    Rect box() const { return {x0_, y0_, w_, h_}; }

    int get(int x, int y) const {
        if (x < x0_ || y < y0_ || x >= x0_ + w_ || y >= y0_ + h_) return kUndef;
        return cells_[idx(x, y)];
    }
    bool defined(int x, int y) const { return get(x, y) != kUndef; }

    void set(int x, int y, int s) {
        if (w_ == 0 || h_ == 0) {
            *this = Pattern(x, y, 1, 1);
        } else if (!box().contains(x, y)) {
            int nx0 = std::min(x0_, x), ny0 = std::min(y0_, y);
            int nx1 = std::max(x0_ + w_, x + 1), ny1 = std::max(y0_ + h_, y + 1);
            Pattern g(nx0, ny0, nx1 - nx0, ny1 - ny0);
            for_each([&](int cx, int cy, int v) { g.cells_[g.idx(cx, cy)] = v; });
            *this = std::move(g);
        }
        cells_[idx(x, y)] = s;
    }
    void erase(int x, int y) {
        if (box().contains(x, y)) cells_[idx(x, y)] = kUndef;
    }

    std::size_t size() const {
        return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](int v) { return v != kUndef; }));
    }
    bool empty() const { return size() == 0; }
    bool is_full() const { return w_ > 0 && h_ > 0 && size() == cells_.size(); }

    // Visits defined cells in row-major order (y ascending, then x).
    template <class F>
    void for_each(F&& f) const {
        for (int y = 0; y < h_; ++y)
            for (int x = 0; x < w_; ++x) {
                int v = cells_[static_cast<std::size_t>(y) * w_ + x];
                if (v != kUndef) f(x0_ + x, y0_ + y, v);
            }
    }

    Pattern shifted(int dx, int dy) const {
        Pattern p = *this;
        p.x0_ += dx;
        p.y0_ += dy;
        return p;
    }

    Pattern trimmed() const {
        int minx = INT_MAX, miny = INT_MAX, maxx = INT_MIN, maxy = INT_MIN;
        for_each([&](int x, int y, int) {
            minx = std::min(minx, x), miny = std::min(miny, y);
            maxx = std::max(maxx, x), maxy = std::max(maxy, y);
        });
        if (minx == INT_MAX) return {};
        return cropped({minx, miny, maxx - minx + 1, maxy - miny + 1});
    }

    // Translate so the bounding box of the defined cells starts at the origin.
    Pattern normalized() const {
        Pattern t = trimmed();
        return t.shifted(-t.x0_, -t.y0_);
    }

    Pattern cropped(const Rect& r) const {
        Pattern p(r.x0, r.y0, r.w, r.h);
        for (int y = r.y0; y < r.y0 + r.h; ++y)
            for (int x = r.x0; x < r.x0 + r.w; ++x) p.cells_[p.idx(x, y)] = get(x, y);
        return p;
    }

    // Writes every defined cell of q into this pattern.
    void paste(const Pattern& q) {
        q.for_each([&](int x, int y, int v) { set(x, y, v); });
    }

    // True if every defined cell of q, shifted by (dx,dy), agrees with this pattern.
    bool contains_at(const Pattern& q, int dx, int dy) const {
        bool ok = true;
        q.for_each([&](int x, int y, int v) {
            if (ok && get(x + dx, y + dy) != v) ok = false;
        });
        return ok;
    }

    // Equality of partial maps, independent of the stored bounding box.
    bool operator==(const Pattern& o) const {
        Pattern a = trimmed(), b = o.trimmed();
        return a.x0_ == b.x0_ && a.y0_ == b.y0_ && a.w_ == b.w_ && a.h_ == b.h_ && a.cells_ == b.cells_;
    }

    const std::vector<int>& raw() const { return cells_; }

private:
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y - y0_) * w_ + (x - x0_); }

    int x0_ = 0, y0_ = 0, w_ = 0, h_ = 0;
    std::vector<int> cells_;
};

// All placements of q inside p (offsets d with q shifted by d agreeing with p).
inline std::vector<std::pair<int, int>> occurrences(const Pattern& p, const Pattern& q) {
    std::vector<std::pair<int, int>> out;
    Pattern nq = q.normalized();
    if (nq.empty()) return out;
    for (int y = p.y0(); y + nq.height() <= p.y0() + p.height(); ++y)
        for (int x = p.x0(); x + nq.width() <= p.x0() + p.width(); ++x)
            if (p.contains_at(nq, x, y)) out.emplace_back(x, y);
    return out;
}

}  // namespace sftkit

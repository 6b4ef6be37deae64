#pragma once

#include "gluing.hpp"

#include <cmath>

namespace sftkit::periodic {

struct FundamentalDomain {
    Pattern cells;  // normalized w*h rectangle
    int w = 0, h = 0;

    bool verify(const SftDefinition& sft) const { return cells.is_full() && torus_violations(sft, cells).empty(); }

    // The periodic configuration restricted to [0, cols*w) x [0, rows*h).
    Pattern tiled(int cols, int rows) const {
        Pattern p(0, 0, cols * w, rows * h);
        for (int y = 0; y < rows * h; ++y)
            for (int x = 0; x < cols * w; ++x) p.set(x, y, cells.get(x % w, y % h));
        return p;
    }

    // Position of P in the periodic configuration, reduced to [0,w) x [0,h).
    std::optional<std::pair<int, int>> find(const Pattern& P) const {
        Pattern q = P.normalized();
        Pattern big = tiled(q.width() / w + 2, q.height() / h + 2);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (big.contains_at(q, x, y)) return std::pair(x, y);
        return std::nullopt;
    }
};

inline json to_json(const FundamentalDomain& d, const SftDefinition& sft) {
    json j = pattern_to_json(d.cells, sft.alphabet);
    j["period"] = {d.w, d.h};
    return j;
}

inline FundamentalDomain domain_from_json(const json& j, const SftDefinition& sft) {
    FundamentalDomain d;
    d.cells = pattern_from_json(j, sft).normalized();
    d.w = j.at("period").at(0).get<int>();
    d.h = j.at("period").at(1).get<int>();
    if (d.cells.width() != d.w || d.cells.height() != d.h || !d.cells.is_full())
        throw Error("InvalidJson", "domain cells do not fill the period rectangle");
    return d;
}

// Gap table f(1..m); arguments past the table reuse its last entry.
struct GapTable {
    std::vector<int> values;
    int operator()(int n) const {
        if (values.empty()) throw Error("InvalidArgument", "empty gap table");
        if (n < 1) n = 1;
        return values[std::min<std::size_t>(n, values.size()) - 1];
    }
    static GapTable constant(int g, int m = 1) { return {std::vector<int>(m, g)}; }
};

inline double threshold(const SftDefinition& sft, int n) {
    int r = sft.rank;
    double a = static_cast<double>(sft.size());
    if (n - r + 2 <= 0) return -INFINITY;
    return std::log(static_cast<double>(n - r + 2)) / std::log(a) / (r - 1) - r + 2;
}

namespace detail {

inline std::optional<FundamentalDomain> single_symbol(const SftDefinition& sft) {
    for (int s = 0; s < static_cast<int>(sft.size()); ++s) {
        FundamentalDomain d{Pattern(0, 0, 1, 1, s), 1, 1};
        if (d.verify(sft)) return d;
    }
    return std::nullopt;
}

// q glued over itself with at most max_gap empty rows (largest working gap first), filled by local
// search over the joint box. Returns the pattern and the gap used.
inline std::optional<std::pair<Pattern, int>> glue(const SftDefinition& sft, const Pattern& q, int max_gap, bool vertical) {
    for (int gap = max_gap; gap >= 0; --gap) {
        gluing::Offset u = vertical ? gluing::Offset{0, q.height() + gap} : gluing::Offset{q.width() + gap, 0};
        auto c = gluing::place_pair(q, q, u);
        if (!c || !admissible(sft, *c)) continue;
        if (auto e = extend_pattern(sft, *c, c->box())) return std::pair(e->normalized(), gap);
    }
    return std::nullopt;
}

// Pigeonhole on (r-1)-wide column strips of g over its full height: the first pair k < l with equal strips
// (smallest k, then smallest l) whose domain g[k,l) x [0,period) verifies and passes `accept`.
template <class Accept>
std::optional<FundamentalDomain> pigeonhole(const SftDefinition& sft, const Pattern& g, int period, Accept&& accept) {
    int r = sft.rank, W = g.width(), Hg = g.height();
    int cw = std::max(1, r - 1);
    auto strip_eq = [&](int a, int b) {
        for (int y = 0; y < Hg; ++y)
            for (int i = 0; i < cw; ++i)
                if (g.get(a + i, y) != g.get(b + i, y)) return false;
        return true;
    };
    for (int k = 0; k + cw <= W; ++k)
        for (int l = k + 1; l + cw <= W; ++l) {
            if (!strip_eq(k, l)) continue;
            FundamentalDomain d{g.cropped({k, 0, l - k, period}).normalized(), l - k, period};
            if (d.verify(sft) && accept(d)) return d;
        }
    return std::nullopt;
}

}  // namespace detail

// Glues an n x (r-1) strip over itself at distance f(n) and cuts a repeating rectangle.
inline FundamentalDomain find_periodic_point(const SftDefinition& sft, const GapTable& f, int n) {
    if (n < 1) throw Error("InvalidArgument", "n must be positive");
    if (sft.rank < 2) {
        if (auto d = detail::single_symbol(sft)) return *d;
        throw Error("NoWitness", "no admissible symbol");
    }
    if (!(f(n) < threshold(sft, n))) throw Error("ThresholdUnmet", "gap exceeds the periodicity threshold at n");
    int r = sft.rank;
    auto w = extend_pattern(sft, Pattern(), {0, 0, n, r - 1});
    if (!w) throw Error("NoWitness", "no admissible strip");
    auto g = detail::glue(sft, *w, f(n), true);
    if (!g) throw Error("NoWitness", "strip does not glue over itself within the given distance");
    auto d = detail::pigeonhole(sft, g->first, (r - 1) + g->second, [](const FundamentalDomain&) { return true; });
    if (!d) throw Error("NoWitness", "no repeating column strip");
    return *d;
}

struct Containing {
    FundamentalDomain domain;
    std::pair<int, int> offset;
    int k = 0;
};

// Doubles P horizontally k times at the gluing distances, glues the chain over itself and cuts a repeating
// rectangle that still contains P.
inline Containing periodic_point_containing(const SftDefinition& sft, const Pattern& P, const GapTable& f, int k_cap = 8) {
    Pattern p = P.normalized();
    if (!admissible(sft, p)) throw Error("WitnessUnavailable", "block violates the forbidden set");
    Pattern chain = p;
    for (int k = 0; k <= k_cap; ++k) {
        if (k > 0) {
            auto c = detail::glue(sft, chain, f(std::max(chain.width(), chain.height())), false);
            if (!c) throw Error("WitnessUnavailable", "chain does not glue horizontally");
            chain = c->first;
        }
        auto g = detail::glue(sft, chain, f(std::max(chain.width(), chain.height())), true);
        if (!g) throw Error("WitnessUnavailable", "chain does not glue over itself");
        std::optional<std::pair<int, int>> at;
        auto d = detail::pigeonhole(sft, g->first, chain.height() + g->second, [&](const FundamentalDomain& d) {
            at = d.find(p);
            return at.has_value();
        });
        if (d) return {*d, *at, k};
    }
    throw Error("KExhausted", "no repeating rectangle containing the block up to the k cap");
}

// Size bound from the doubling construction: the first chain width exceeding the number of column strips.
inline std::pair<int, int> membership_bound(const SftDefinition& sft, int n, const GapTable& f, int k_cap = 30) {
    int cw = std::max(1, sft.rank - 1);
    double la = std::log2(static_cast<double>(sft.size()));
    long W = n;
    for (int k = 0; k <= k_cap; ++k) {
        if (k > 0) W = 2 * W + f(static_cast<int>(std::min<long>(W, INT_MAX)));
        int gap = f(static_cast<int>(std::min<long>(W, INT_MAX)));
        double bits = la * cw * (2 * n + gap);
        if (bits < 62 && static_cast<double>(W - cw + 1) > std::exp2(bits)) return {static_cast<int>(W), n + gap};
        if (W > (1L << 30)) break;
    }
    throw Error("BoundTooLarge", "membership bound exceeds the doubling cap");
}

struct MembershipOptions {
    std::size_t cell_budget = 4096;
};

// True iff some w*h torus filling within the bound contains P.
inline bool decide_membership(const SftDefinition& sft, const Pattern& P, const GapTable& f, MembershipOptions opt = {}) {
    Pattern p = P.normalized();
    if (!admissible(sft, p)) return false;
    int n = std::max(p.width(), p.height());
    auto [bw, bh] = membership_bound(sft, n, f);
    if (static_cast<std::size_t>(bw) * bh > opt.cell_budget)
        throw Error("BoundTooLarge", "membership bound " + std::to_string(bw) + "x" + std::to_string(bh) +
                                         " exceeds the cell budget");
    for (int s = 2; s <= bw + bh; ++s)
        for (int w = std::max(1, s - bh); w <= std::min(bw, s - 1); ++w) {
            int h = s - w;
            for (int oy = 0; oy < h; ++oy)
                for (int ox = 0; ox < w; ++ox) {
                    Pattern pin(0, 0, w, h);
                    bool clash = false;
                    p.for_each([&](int x, int y, int v) {
                        int tx = (x + ox) % w, ty = (y + oy) % h;
                        if (pin.defined(tx, ty) && pin.get(tx, ty) != v) clash = true;
                        pin.set(tx, ty, v);
                    });
                    if (!clash && torus_fill(sft, w, h, pin)) return true;
                }
        }
    return false;
}

}  // namespace sftkit::periodic

#pragma once

#include "sft.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

namespace sftkit::gluing {

using Offset = std::pair<int, int>;

inline int norm_inf(const Offset& u) { return std::max(std::abs(u.first), std::abs(u.second)); }

enum class ClassHint { constant, logarithmic, linear, unknown };

inline std::string hint_name(ClassHint c) {
    switch (c) {
        case ClassHint::constant: return "constant";
        case ClassHint::logarithmic: return "logarithmic";
        case ClassHint::linear: return "linear";
        default: return "unknown";
    }
}

struct GluingReport {
    int n = 0;
    std::size_t pair_count = 0;
    int margin = 0;
    int window = 0;
    std::set<Offset> certified_offsets;         // offsets certified for every pair
    std::optional<int> min_uniform_gap;
    std::vector<std::optional<int>> gaps;       // gaps[m-1] for block sides m = 1..n
    ClassHint class_hint = ClassHint::unknown;
    double residual = 0;
};

inline int default_threads() {
    if (const char* e = std::getenv("SFTKIT_THREADS")) {
        int t = std::atoi(e);
        if (t > 0) return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs f(i) for i in [0, n) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            try {
                for (std::size_t i; (i = next++) < n;) f(i);
            } catch (...) {
                std::lock_guard lk(m);
                if (!err) err = std::current_exception();
                next = n;
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// p placed at u next to q at the origin, or nullopt when their supports overlap.
inline std::optional<Pattern> place_pair(const Pattern& p, const Pattern& q, Offset u) {
    Pattern qq = q.normalized(), pp = p.normalized().shifted(u.first, u.second);
    bool overlap = false;
    pp.for_each([&](int x, int y, int) { overlap |= qq.defined(x, y); });
    if (overlap) return std::nullopt;
    pp.for_each([&](int x, int y, int s) { qq.set(x, y, s); });
    return qq;
}

// An admissible filling of the box inflated by margin exists. A short search settles most cases; the
// rest are decided by transfer counting with the combined cells pinned, then by unbounded search.
inline bool certify(const SftDefinition& sft, const Pattern& combined, int margin) {
    if (!admissible(sft, combined)) return false;
    Rect b = combined.box();
    Rect t{b.x0 - margin, b.y0 - margin, b.w + 2 * margin, b.h + 2 * margin};
    try {
        return extend_pattern(sft, combined, t, 20'000).has_value();
    } catch (const Error& e) {
        if (e.code != "BudgetExceeded") throw;
    }
    try {
        return count_rectangles_in(
                   sft, t.w, t.h,
                   [&](int x, int y, int s) {
                       int v = combined.get(x + t.x0, y + t.y0);
                       return v == kUndef || v == s;
                   },
                   200'000) > 0;
    } catch (const Error& e) {
        if (e.code != "BudgetExceeded") throw;
    }
    return extend_pattern(sft, combined, t).has_value();
}

inline std::set<Offset> gluing_set(const SftDefinition& sft, const Pattern& p, const Pattern& q, int window, int margin,
                                   int min_norm = 0) {
    for (auto* x : {&p, &q})
        if (!admissible(sft, *x)) throw Error("Inadmissible", "pattern violates the forbidden set");
    std::set<Offset> out;
    for (int dy = -window; dy <= window; ++dy)
        for (int dx = -window; dx <= window; ++dx) {
            if (norm_inf({dx, dy}) < min_norm) continue;
            auto c = place_pair(p, q, {dx, dy});
            if (c && certify(sft, *c, margin)) out.insert({dx, dy});
        }
    return out;
}

// Least g with every offset of norm >= n + g in `cert` (norms up to window), or nullopt.
inline std::optional<int> uniform_gap(const std::set<Offset>& cert, int n, int window) {
    int worst = n - 1;  // largest norm >= n that is not certified
    for (int dy = -window; dy <= window; ++dy)
        for (int dx = -window; dx <= window; ++dx) {
            int k = norm_inf({dx, dy});
            if (k >= n && !cert.count({dx, dy})) worst = std::max(worst, k);
        }
    if (worst >= window) return std::nullopt;
    return worst + 1 - n;
}

struct Fit {
    ClassHint hint = ClassHint::unknown;
    double residual = 0;
};

// Least-squares fit of gaps against constant, a*log2(n)+b and a*n+b; ties go to the simpler family.
inline Fit fit_class(const std::vector<std::pair<int, double>>& pts) {
    if (pts.empty()) return {};
    auto sse_line = [&](auto feat) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, m = static_cast<double>(pts.size());
        for (auto [n, g] : pts) {
            double x = feat(n);
            sx += x, sy += g, sxx += x * x, sxy += x * g;
        }
        double den = m * sxx - sx * sx;
        double a = std::abs(den) < 1e-12 ? 0 : (m * sxy - sx * sy) / den, b = (sy - a * sx) / m;
        double e = 0;
        for (auto [n, g] : pts) e += std::pow(g - (a * feat(n) + b), 2);
        return e;
    };
    double mean = 0;
    for (auto [n, g] : pts) mean += g;
    mean /= static_cast<double>(pts.size());
    double c = 0;
    for (auto [n, g] : pts) c += (g - mean) * (g - mean);
    double l = sse_line([](int n) { return std::log2(static_cast<double>(n)); });
    double li = sse_line([](int n) { return static_cast<double>(n); });
    Fit f{ClassHint::constant, c};
    if (l < f.residual - 1e-9) f = {ClassHint::logarithmic, l};
    if (li < f.residual - 1e-9) f = {ClassHint::linear, li};
    return f;
}

struct GapOptions {
    int threads = 1;
    std::size_t block_limit = 200'000;
};

inline std::optional<int> gap_at(const SftDefinition& sft, int n, int window, int margin, const GapOptions& opt,
                                 std::size_t* pairs = nullptr, std::set<Offset>* common = nullptr) {
    auto blocks = collect_blocks(sft, n, opt.block_limit);
    std::size_t np = blocks.size() * blocks.size();
    if (pairs) *pairs = np;
    std::vector<std::optional<int>> per(np);
    std::vector<std::set<Offset>> sets(common ? np : 0);
    parallel_for(np, opt.threads, [&](std::size_t i) {
        auto s = gluing_set(sft, blocks[i / blocks.size()], blocks[i % blocks.size()], window, margin, n);
        per[i] = uniform_gap(s, n, window);
        if (common) sets[i] = std::move(s);
    });
    if (common) {
        common->clear();
        if (!sets.empty()) {
            *common = sets[0];
            for (auto& s : sets) {
                std::set<Offset> k;
                std::set_intersection(common->begin(), common->end(), s.begin(), s.end(), std::inserter(k, k.end()));
                *common = std::move(k);
            }
        }
    }
    std::optional<int> g = 0;
    if (np == 0) return std::nullopt;
    for (auto& v : per) {
        if (!v) return std::nullopt;
        g = std::max(*g, *v);
    }
    return g;
}

inline GluingReport gap_estimate(const SftDefinition& sft, int n, int window, int margin, GapOptions opt = {}) {
    if (n < 1) throw Error("InvalidArgument", "n must be positive");
    if (window < 2 * n) throw Error("InvalidArgument", "window must be at least 2n");
    GluingReport rep;
    rep.n = n;
    rep.margin = margin;
    rep.window = window;
    std::vector<std::pair<int, double>> pts;
    bool all = true;
    for (int m = 1; m <= n; ++m) {
        auto g = m == n ? gap_at(sft, m, window, margin, opt, &rep.pair_count, &rep.certified_offsets)
                        : gap_at(sft, m, window, margin, opt);
        rep.gaps.push_back(g);
        if (g) pts.emplace_back(m, *g);
        else all = false;
    }
    rep.min_uniform_gap = rep.gaps.back();
    if (all && pts.size() >= 2) {
        auto f = fit_class(pts);
        rep.class_hint = f.hint;
        rep.residual = f.residual;
    } else if (all && pts.size() == 1) {
        rep.class_hint = ClassHint::constant;
    }
    return rep;
}

inline json to_json(const GluingReport& r) {
    json gaps = json::array();
    for (auto& g : r.gaps) gaps.push_back(g ? json(*g) : json(nullptr));
    return {{"n", r.n},
            {"margin", r.margin},
            {"window", r.window},
            {"pairs", r.pair_count},
            {"min_uniform_gap", r.min_uniform_gap ? json(*r.min_uniform_gap) : json(nullptr)},
            {"gaps", gaps},
            {"class_hint", hint_name(r.class_hint)},
            {"residual", r.residual},
            {"certified_offsets", r.certified_offsets.size()}};
}

// Smallest number of empty rows between q below and p above (left edges aligned) that certifies.
inline std::optional<int> vertical_gap(const SftDefinition& sft, const Pattern& p, const Pattern& q, int max_gap,
                                       int margin) {
    Pattern qq = q.normalized();
    for (int g = 0; g <= max_gap; ++g) {
        auto c = place_pair(p, qq, {0, qq.height() + g});
        if (c && certify(sft, *c, margin)) return g;
    }
    return std::nullopt;
}

struct NetWitness {
    Offset anchor;
    int period = 0;
};

// Smallest period T and lexicographically least anchor in [0,T)^2 with u + T*v in cert for all v != 0 in the window.
inline std::optional<NetWitness> net_witness(const std::set<Offset>& cert, int window) {
    for (int T = 1; T <= window; ++T)
        for (int ax = 0; ax < T; ++ax)
            for (int ay = 0; ay < T; ++ay) {
                bool ok = true, any = false;
                for (int x = ax - T * ((ax + window) / T); x <= window && ok; x += T)
                    for (int y = ay - T * ((ay + window) / T); y <= window && ok; y += T) {
                        if (std::abs(x) > window || std::abs(y) > window || (x == ax && y == ay)) continue;
                        any = true;
                        ok = cert.count({x, y}) > 0;
                    }
                if (ok && any) return NetWitness{{ax, ay}, T};
            }
    return std::nullopt;
}

inline std::optional<NetWitness> net_gluing_witness(const SftDefinition& sft, const Pattern& p, const Pattern& q,
                                                    int window, int margin) {
    return net_witness(gluing_set(sft, p, q, window, margin), window);
}

// Offsets between occurrences of q and p inside a globally admissible pattern; each is a genuine gluing offset.
inline std::set<Offset> occurrence_offsets(const Pattern& container, const Pattern& p, const Pattern& q, int window) {
    Pattern pp = p.normalized(), qq = q.normalized();
    auto find = [&](const Pattern& s) {
        std::vector<Offset> at;
        for (int y = container.y0(); y + s.height() <= container.y0() + container.height(); ++y)
            for (int x = container.x0(); x + s.width() <= container.x0() + container.width(); ++x)
                if (container.contains_at(s, x, y)) at.emplace_back(x, y);
        return at;
    };
    auto ps = find(pp), qs = find(qq);
    std::set<Offset> out;
    for (auto& a : qs)
        for (auto& b : ps) {
            Offset u{b.first - a.first, b.second - a.second};
            if (norm_inf(u) <= window && place_pair(pp, qq, u)) out.insert(u);
        }
    return out;
}

}  // namespace sftkit::gluing

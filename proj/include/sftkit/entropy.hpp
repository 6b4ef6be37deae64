#pragma once

#include "distort.hpp"
#include "robinson.hpp"

#include <cmath>
#include <sstream>

namespace sftkit::entropy {

using Rational = boost::multiprecision::cpp_rational;

inline double log2_big(const BigInt& n) {
    if (n <= 0) return -std::numeric_limits<double>::infinity();
    unsigned m = boost::multiprecision::msb(n);
    if (m < 53) return std::log2(n.convert_to<double>());
    unsigned s = m - 52;
    return std::log2(BigInt(n >> s).convert_to<double>()) + s;
}

struct BlockRatio {
    int n = 0;
    BigInt count;
    double ratio = 0;  // log2(count) / n^2
};

struct StripBound {
    int height = 0;
    BigInt count;
    double value = 0;  // log2(count) / (width * height)
};

struct EntropyReport {
    std::string sft;
    int strip_width = 0;
    std::vector<BlockRatio> per_n;
    std::vector<StripBound> upper_seq;  // free boundary
    std::vector<StripBound> lower_seq;  // periodic boundary, heights with at least one filling
    std::vector<double> growth;         // log2(N(h) / N(h-1)) / width, h >= 2
    std::optional<double> target;

    bool upper_non_increasing() const {
        for (std::size_t i = 1; i < upper_seq.size(); ++i)
            if (upper_seq[i].value > upper_seq[i - 1].value + 1e-12) return false;
        return true;
    }
    bool upper_above_target() const {
        if (!target) return true;
        for (auto& u : upper_seq)
            if (u.value < *target) return false;
        return true;
    }
};

struct EstimateOptions {
    int max_height = 0;  // 0 means n_max
    std::size_t budget = 2'000'000;
    bool periodic = true;
    int periodic_max_height = 4;
};

inline EntropyReport entropy_estimate(const SftDefinition& sft, int n_max, int strip_width, EstimateOptions opt = {}) {
    if (n_max < 1 || strip_width < 1) throw Error("InvalidArgument", "n_max and strip_width must be positive");
    EntropyReport rep;
    rep.sft = sft.name;
    rep.strip_width = strip_width;
    for (int n = 1; n <= n_max; ++n) {
        BigInt c = count_rectangles(sft, n, n, opt.budget);
        rep.per_n.push_back({n, c, c > 0 ? log2_big(c) / (n * n) : 0.0});
    }
    int H = opt.max_height > 0 ? opt.max_height : n_max;
    auto free = detail::StripCounter(sft, strip_width).run(H, opt.budget);
    for (int h = 1; h <= H; ++h) {
        const BigInt& c = free[h - 1];
        if (c == 0) break;
        rep.upper_seq.push_back({h, c, log2_big(c) / (strip_width * h)});
        if (h >= 2) rep.growth.push_back((log2_big(c) - log2_big(free[h - 2])) / strip_width);
    }
    if (opt.periodic) {
        for (int h = 1; h <= std::min(H, opt.periodic_max_height); ++h) {
            BigInt c;
            try {
                c = detail::torus_count(sft, strip_width, h, opt.budget);
            } catch (const Error& e) {
                if (e.code == "BudgetExceeded") break;
                throw;
            }
            if (c > 0) rep.lower_seq.push_back({h, c, log2_big(c) / (strip_width * h)});
        }
    }
    return rep;
}

inline json to_json(const EntropyReport& r) {
    json per = json::array(), up = json::array(), lo = json::array();
    for (auto& b : r.per_n) per.push_back({{"n", b.n}, {"count", b.count.str()}, {"ratio", b.ratio}});
    for (auto& s : r.upper_seq) up.push_back({{"height", s.height}, {"count", s.count.str()}, {"value", s.value}});
    for (auto& s : r.lower_seq) lo.push_back({{"height", s.height}, {"count", s.count.str()}, {"value", s.value}});
    json j{{"sft", r.sft},        {"strip_width", r.strip_width},
           {"per_n", per},        {"upper_seq", up},
           {"lower_seq", lo},     {"growth", r.growth},
           {"upper_non_increasing", r.upper_non_increasing()}};
    j["target"] = r.target ? json(*r.target) : json(nullptr);
    return j;
}

// Rows n,count,ratio,upper,lower; strip values are matched by height = n.
inline std::string to_csv(const EntropyReport& r) {
    std::ostringstream os;
    os.precision(10);
    os << "n,count,ratio,upper,lower\n";
    std::size_t rows = std::max({r.per_n.size(), r.upper_seq.size(), r.lower_seq.empty() ? 0 : std::size_t(r.lower_seq.back().height)});
    for (std::size_t i = 0; i < rows; ++i) {
        int n = static_cast<int>(i) + 1;
        os << n << ',';
        if (i < r.per_n.size()) os << r.per_n[i].count << ',' << r.per_n[i].ratio;
        else os << ',';
        os << ',';
        if (i < r.upper_seq.size()) os << r.upper_seq[i].value;
        os << ',';
        for (auto& l : r.lower_seq)
            if (l.height == n) os << l.value;
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Entropy shift of d^(r)

struct ShiftRow {
    int k = 0, n = 0;
    BigInt full, witness, formula;
    bool holds() const { return full >= witness && witness == formula; }
};

struct ShiftReport {
    int r = 0;
    double base_entropy = 0;
    double target = 0;
    std::vector<ShiftRow> rows;
    EntropyReport strips;

    bool inequality_holds() const {
        return std::all_of(rows.begin(), rows.end(), [](const ShiftRow& w) { return w.holds(); });
    }
    double final_gap() const { return strips.upper_seq.empty() ? NAN : strips.upper_seq.back().value - target; }
};

struct ShiftOptions {
    int k_max = 2;
    int strip_width = 6;
    int max_height = 12;
    double base_entropy = 0;
    std::size_t budget = 4'000'000;
};

// Witness family: kr-blocks of → symbols whose column 0 has counter 0; it has (r+1)^(rk^2) N_kr(base) members.
inline ShiftReport entropy_shift_check(const SftDefinition& base, int r, ShiftOptions opt = {}) {
    auto ds = distort::distort_sft_r(base, r);
    ShiftReport rep;
    rep.r = r;
    rep.base_entropy = opt.base_entropy;
    rep.target = opt.base_entropy + std::log2(1.0 + r) / r;
    for (int k = 1; k <= opt.k_max; ++k) {
        int n = k * r;
        ShiftRow row{k, n};
        row.full = count_rectangles(ds.derived, n, n, opt.budget);
        row.witness = count_rectangles_in(
            ds.derived, n, n,
            [&](int x, int, int s) {
                auto& t = ds.symbols[s];
                return !t.down && (x != 0 || t.counter == 0);
            },
            opt.budget);
        row.formula = boost::multiprecision::pow(BigInt(r + 1), r * k * k) * count_rectangles(base, n, n, opt.budget);
        rep.rows.push_back(row);
    }
    rep.strips = entropy_estimate(ds.derived, 1, opt.strip_width, {opt.max_height, opt.budget, false, 0});
    rep.strips.target = rep.target;
    return rep;
}

inline json to_json(const ShiftReport& s) {
    json rows = json::array();
    for (auto& w : s.rows)
        rows.push_back({{"k", w.k},
                        {"n", w.n},
                        {"full", w.full.str()},
                        {"witness", w.witness.str()},
                        {"formula", w.formula.str()},
                        {"holds", w.holds()}});
    return {{"r", s.r},
            {"target", s.target},
            {"rows", rows},
            {"inequality_holds", s.inequality_holds()},
            {"upper_above_target", s.strips.upper_above_target()},
            {"upper_non_increasing", s.strips.upper_non_increasing()},
            {"final_gap", s.final_gap()},
            {"strips", to_json(s.strips)}};
}

// ---------------------------------------------------------------------------
// Robinson densities

struct DensityReport {
    BigInt area;
    int max_order = -1;            // largest order with a complete cell in the window
    std::vector<Rational> lambda;  // blue corners whose smallest enclosing cell has order k
    Rational star;                 // positions without a blue corner
    Rational residual;             // blue corners inside no complete cell

    Rational total() const {
        Rational t = star + residual;
        for (auto& l : lambda) t += l;
        return t;
    }
};

// "Inside" means strictly within the cell's bounding petal.
inline DensityReport density_report(const Pattern& p) {
    auto& cat = robinson::Catalog::get();
    auto h = robinson::extract_petals(p);
    Rect box = p.box();
    std::vector<std::vector<Rect>> cells;
    for (int k = 0;; ++k) {
        auto c = robinson::cells_of_order(h, k);
        if (c.empty()) break;
        cells.push_back(std::move(c));
    }
    DensityReport rep;
    rep.max_order = static_cast<int>(cells.size()) - 1;
    std::vector<BigInt> per(cells.size());
    BigInt area = 0, star = 0, rest = 0;
    // Smallest enclosing order per position, painted from the largest order down.
    std::vector<int> order(static_cast<std::size_t>(box.w) * box.h, -1);
    for (int k = rep.max_order; k >= 0; --k)
        for (auto& c : cells[k])
            for (int y = c.y0 + 1; y < c.y0 + c.h - 1; ++y)
                for (int x = c.x0 + 1; x < c.x0 + c.w - 1; ++x)
                    order[static_cast<std::size_t>(y - box.y0) * box.w + (x - box.x0)] = k;
    p.for_each([&](int x, int y, int s) {
        ++area;
        if (!cat.tile(s).blue()) {
            ++star;
            return;
        }
        int k = order[static_cast<std::size_t>(y - box.y0) * box.w + (x - box.x0)];
        if (k < 0) ++rest;
        else ++per[k];
    });
    rep.area = area;
    for (auto& c : per) rep.lambda.emplace_back(c, area);
    rep.star = Rational(star, area);
    rep.residual = Rational(rest, area);
    return rep;
}

inline Rational density_lambda(const Pattern& p, int k) {
    auto r = density_report(p);
    return k >= 0 && k < static_cast<int>(r.lambda.size()) ? r.lambda[k] : Rational(0);
}

inline Rational density_star(const Pattern& p) { return density_report(p).star; }

}  // namespace sftkit::entropy

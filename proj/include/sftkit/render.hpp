#pragma once

#include "robinson.hpp"

#include <sstream>

namespace sftkit::render {

struct RenderStyle {
    int cell_px = 16;
    bool draw_arrows = true;
    bool draw_petals = false;
    std::map<std::string, std::string> palette{{"blue", "#8ab4f8"}, {"red", "#f28b82"},   {"arrow", "#202124"},
                                               {"cell", "#f1f3f4"}, {"petal", "#d93025"}, {"grid", "#dadce0"}};
};

namespace detail {

inline std::string color(const RenderStyle& s, const std::string& key) {
    auto it = s.palette.find(key);
    return it == s.palette.end() ? "#000000" : it->second;
}

class Svg {
public:
    Svg(const Pattern& p, const RenderStyle& st) : p_(p), st_(st) {
        if (st.cell_px < 4) throw Error("InvalidArgument", "cell_px must be at least 4");
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << p.width() * st.cell_px << "\" height=\""
            << p.height() * st.cell_px << "\">\n";
    }
    // Pixel center of cell (x, y); y grows upwards in patterns and downwards in SVG.
    std::pair<double, double> center(int x, int y) const {
        return {(x - p_.x0() + 0.5) * st_.cell_px, (p_.y0() + p_.height() - 1 - y + 0.5) * st_.cell_px};
    }
    void rect(int x, int y, const std::string& fill) {
        auto [cx, cy] = center(x, y);
        double h = st_.cell_px / 2.0;
        os_ << "<rect x=\"" << cx - h << "\" y=\"" << cy - h << "\" width=\"" << st_.cell_px << "\" height=\""
            << st_.cell_px << "\" fill=\"" << fill << "\" stroke=\"" << color(st_, "grid") << "\"/>\n";
    }
    // Segment from the cell center towards (dx, dy), scaled by the half cell; optional head at the end.
    void ray(int x, int y, double fx, double fy, double tx, double ty, bool head, double offset = 0) {
        auto [cx, cy] = center(x, y);
        double h = st_.cell_px / 2.0;
        double nx = -(ty - fy), ny = tx - fx;  // normal for parallel lines
        double len = std::hypot(nx, ny);
        if (len > 0) nx /= len, ny /= len;
        double x1 = cx + fx * h + nx * offset * h, y1 = cy - fy * h - ny * offset * h;
        double x2 = cx + tx * h + nx * offset * h, y2 = cy - ty * h - ny * offset * h;
        os_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\" stroke=\""
            << color(st_, "arrow") << "\" stroke-width=\"" << std::max(1.0, st_.cell_px / 12.0) << "\"/>\n";
        if (head) {
            double dx = x2 - x1, dy = y2 - y1, l = std::hypot(dx, dy);
            if (l == 0) return;
            dx /= l, dy /= l;
            double a = h * 0.35;
            os_ << "<polygon points=\"" << x2 << "," << y2 << " " << x2 - a * dx - a * 0.6 * dy << ","
                << y2 - a * dy + a * 0.6 * dx << " " << x2 - a * dx + a * 0.6 * dy << "," << y2 - a * dy - a * 0.6 * dx
                << "\" fill=\"" << color(st_, "arrow") << "\"/>\n";
        }
    }
    void text(int x, int y, const std::string& t) {
        auto [cx, cy] = center(x, y);
        os_ << "<text x=\"" << cx << "\" y=\"" << cy + st_.cell_px * 0.15 << "\" font-size=\"" << st_.cell_px * 0.45
            << "\" text-anchor=\"middle\">" << escape(t) << "</text>\n";
    }
    void outline(const Rect& r) {
        auto [x1, y1] = center(r.x0, r.y0 + r.h - 1);
        auto [x2, y2] = center(r.x0 + r.w - 1, r.y0);
        os_ << "<rect x=\"" << x1 << "\" y=\"" << y1 << "\" width=\"" << x2 - x1 << "\" height=\"" << y2 - y1
            << "\" fill=\"none\" stroke=\"" << color(st_, "petal") << "\" stroke-width=\"" << std::max(1.0, st_.cell_px / 8.0)
            << "\"/>\n";
    }
    std::string finish() {
        os_ << "</svg>\n";
        return os_.str();
    }

    static std::string escape(const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '<') o += "&lt;";
            else if (c == '>') o += "&gt;";
            else if (c == '&') o += "&amp;";
            else if (c == '"') o += "&quot;";
            else o += c;
        }
        return o;
    }

private:
    const Pattern& p_;
    const RenderStyle& st_;
    std::ostringstream os_;
};

inline std::pair<double, double> unit(robinson::Dir d) {
    auto [dx, dy] = robinson::step(d);
    return {static_cast<double>(dx), static_cast<double>(dy)};
}

}  // namespace detail

// Symbols drawn as text on plain cells; → and ↓ drawn as arrows.
inline std::string render_pattern(const Pattern& p, const std::vector<std::string>& alphabet, RenderStyle st = {}) {
    detail::Svg svg(p, st);
    p.for_each([&](int x, int y, int s) {
        const std::string& a = alphabet.at(s);
        svg.rect(x, y, a == "■" ? "#3c4043" : detail::color(st, "cell"));
        if (st.draw_arrows && a == "→") svg.ray(x, y, -0.8, 0, 0.8, 0, true);
        else if (st.draw_arrows && a == "↓") svg.ray(x, y, 0, 0.8, 0, -0.8, true);
        else if (a != "□" && a != "■") svg.text(x, y, a);
    });
    return svg.finish();
}

// Robinson tiles: corners shaded blue or red with their two arms, arrow tiles as lines with heads,
// double lines drawn twice; petals optionally outlined.
inline std::string render_robinson(const Pattern& p, RenderStyle st = {}) {
    using namespace robinson;
    auto& cat = Catalog::get();
    detail::Svg svg(p, st);
    p.for_each([&](int x, int y, int s) {
        const Tile& t = cat.tile(s);
        if (t.is_corner()) {
            svg.rect(x, y, detail::color(st, t.red ? "red" : "blue"));
            static const std::pair<Dir, Dir> arms[] = {{Dir::E, Dir::N}, {Dir::W, Dir::N}, {Dir::W, Dir::S}, {Dir::E, Dir::S}};
            auto [a, b] = arms[static_cast<int>(t.quad)];
            for (Dir d : {a, b}) {
                auto [ux, uy] = detail::unit(d);
                svg.ray(x, y, 0, 0, ux, uy, true);
            }
            return;
        }
        svg.rect(x, y, detail::color(st, "cell"));
        if (!st.draw_arrows) return;
        auto [ux, uy] = detail::unit(t.dir);
        if (t.double_line()) {
            svg.ray(x, y, -ux, -uy, ux, uy, true, 0.2);
            svg.ray(x, y, -ux, -uy, ux, uy, true, -0.2);
        } else {
            svg.ray(x, y, -ux, -uy, ux, uy, true);
        }
    });
    if (st.draw_petals)
        for (auto& pt : extract_petals(p, false).petals) svg.outline(pt.square());
    return svg.finish();
}

}  // namespace sftkit::render

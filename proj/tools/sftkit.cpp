#include <sftkit/catalog.hpp>
#include <sftkit/delta.hpp>
#include <sftkit/distort.hpp>
#include <sftkit/entropy.hpp>
#include <sftkit/gluing.hpp>
#include <sftkit/periodic.hpp>
#include <sftkit/render.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace sftkit;
using ojson = nlohmann::ordered_json;

namespace {

ojson ordered(const json& j) { return ojson::parse(j.dump()); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("IoError", "cannot write '" + path + "'");
    f << text;
}

// Writes to `out` when given, stdout otherwise.
void emit(const ojson& j, const std::string& out = {}) {
    std::string s = j.dump() + "\n";
    if (out.empty()) std::cout << s;
    else write_text(out, s);
}

Pattern read_pattern(const std::string& path, const SftDefinition& sft) {
    return pattern_from_json(read_json_file(path), sft);
}

periodic::GapTable read_gap_table(const std::string& path, std::optional<int> constant) {
    if (constant) return periodic::GapTable::constant(*constant);
    if (path.empty()) throw Error("InvalidArgument", "a gap table (--f) or constant gap (--f-const) is required");
    json j = read_json_file(path);
    if (j.is_object()) j = j.at("f");
    periodic::GapTable t{j.get<std::vector<int>>()};
    if (t.values.empty()) throw Error("InvalidArgument", "empty gap table");
    return t;
}

robinson::Quad parse_quad(const std::string& s) {
    for (int q = 0; q < 4; ++q)
        if (s == robinson::quad_name(static_cast<robinson::Quad>(q))) return static_cast<robinson::Quad>(q);
    throw Error("InvalidArgument", "orientation must be sw, se, ne or nw");
}

ojson robinson_pattern_json(const Pattern& p) {
    ojson j = ordered(pattern_to_json(p, robinson::sft().alphabet));
    j["sft"] = "robinson_adr";
    return j;
}

ojson pair_json(std::pair<int, int> p) { return ojson::array({p.first, p.second}); }

bool robinson_symbols(const json& pj) {
    auto& s = robinson::sft();
    for (auto& c : pj.at("cells"))
        if (!s.find_symbol(c.at(2).get<std::string>())) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for two-dimensional subshifts of finite type"};
    app.require_subcommand(1);
    int threads = gluing::default_threads();
    app.add_option("--threads", threads, "Worker threads (default SFTKIT_THREADS or hardware)")->check(CLI::PositiveNumber);
    app.fallthrough();

    std::string sft_name, in, out, svg, f_path, block_path;
    int n = 1, window = 0, margin = 2, order = 1, t = 1, max_n = 4, strip_width = 6, max_height = 0, max_period = 1;
    std::optional<int> f_const;
    std::optional<double> target;
    std::string orientation = "sw", csv;
    std::vector<std::string> pair;
    bool collect = false, petals = false;

    auto* count = app.add_subcommand("count", "Count admissible n-blocks");
    count->add_option("--sft", sft_name, "Built-in name or definition file")->required();
    count->add_option("--n", n, "Block side")->required()->check(CLI::PositiveNumber);
    count->add_flag("--collect", collect, "Also list the blocks");

    auto* glue = app.add_subcommand("glue", "Gluing gaps, or the gluing set of one pair");
    glue->add_option("--sft", sft_name)->required();
    glue->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    glue->add_option("--window", window, "Offset window (default 2n+2)");
    glue->add_option("--margin", margin)->check(CLI::NonNegativeNumber);
    glue->add_option("--pair", pair, "Pattern files p.json q.json")->expected(2);

    auto* rob = app.add_subcommand("robinson", "Robinson supertiles, petals and completion");
    rob->require_subcommand(1);
    auto* rsup = rob->add_subcommand("supertile", "Generate an order-n supertile");
    rsup->add_option("--order", order)->required()->check(CLI::Range(0, 7));
    rsup->add_option("--orientation", orientation);
    rsup->add_option("--out", out);
    rsup->add_option("--svg", svg);
    auto* rpet = rob->add_subcommand("petals", "Petal hierarchy of a pattern");
    rpet->add_option("--in", in)->required();
    auto* rcom = rob->add_subcommand("complete", "Embed a block into a supertile");
    rcom->add_option("--in", in)->required();
    rcom->add_option("--out", out);

    auto* del = app.add_subcommand("delta", "Curve subshift procedures");
    del->require_subcommand(1);
    auto* dct = del->add_subcommand("complete-t", "Complete a block with algorithm T");
    auto* dcp = del->add_subcommand("compactify", "Compactify outgoing curves");
    auto* dsh = del->add_subcommand("shift", "Shift curves down t times");
    for (auto* s : {dct, dcp, dsh}) {
        s->add_option("--in", in)->required();
        s->add_option("--out", out);
    }
    dsh->add_option("--t", t)->required()->check(CLI::PositiveNumber);

    auto* dis = app.add_subcommand("distort", "Apply d_A, d_r and rho left to right");
    dis->add_option("--sft", sft_name)->required();
    std::vector<int> rs;
    auto* opt_r = dis->add_option("--r", rs, "Apply d_r")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->allow_extra_args(false);
    auto* opt_rho = dis->add_flag("--rho", "Apply rho")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    auto* opt_da = dis->add_flag("--da", "Apply d_A")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    dis->add_option("--out", out);

    auto* ent = app.add_subcommand("entropy", "Entropy estimates");
    ent->add_option("--sft", sft_name)->required();
    ent->add_option("--max-n", max_n)->check(CLI::PositiveNumber);
    ent->add_option("--strip-width", strip_width)->check(CLI::PositiveNumber);
    ent->add_option("--max-height", max_height, "Strip heights (default max-n)");
    ent->add_option("--target", target);
    ent->add_option("--csv", csv, "Also write n,count,ratio,upper,lower");
    std::optional<int> shift_r;
    ent->add_option("--shift", shift_r, "Check the d_r entropy shift over this base");

    auto* per = app.add_subcommand("periodic", "Periodic point constructions");
    per->require_subcommand(1);
    auto* pfind = per->add_subcommand("find", "Periodic point from strip gluing");
    auto* pcon = per->add_subcommand("containing", "Periodic point containing a block");
    auto* pdec = per->add_subcommand("decide", "Decide whether a block occurs in the subshift");
    for (auto* s : {pfind, pcon, pdec}) {
        s->add_option("--sft", sft_name)->required();
        s->add_option("--f", f_path, "Gap table file");
        s->add_option("--f-const", f_const, "Constant gap");
        s->add_option("--out", out);
    }
    pfind->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    pcon->add_option("--block", block_path)->required();
    pdec->add_option("--block", block_path)->required();

    auto* ref = app.add_subcommand("refute-period", "Torus sizes admitting a periodic filling");
    ref->add_option("--sft", sft_name)->required();
    ref->add_option("--max", max_period)->required()->check(CLI::PositiveNumber);

    auto* ren = app.add_subcommand("render", "Render a pattern as SVG");
    ren->add_option("--in", in)->required();
    ren->add_option("--out", out)->required();
    ren->add_flag("--petals", petals);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*count) {
            SftDefinition s = load_sft(sft_name);
            ojson j{{"n", n}};
            if (collect) {
                ojson blocks = ojson::array();
                auto bs = collect_blocks(s, n);
                for (auto& b : bs) blocks.push_back(ordered(pattern_to_json(b, s.alphabet)));
                j["count"] = bs.size();
                j["blocks"] = blocks;
            } else {
                BigInt c = count_blocks(s, n);
                j["count"] = c <= BigInt(std::numeric_limits<std::int64_t>::max()) ? ojson(c.convert_to<std::int64_t>())
                                                                                      : ojson(c.str());
            }
            emit(j);
        } else if (*glue) {
            SftDefinition s = load_sft(sft_name);
            int w = window > 0 ? window : 2 * n + 2;
            if (!pair.empty()) {
                Pattern p = read_pattern(pair[0], s), q = read_pattern(pair[1], s);
                auto set = gluing::gluing_set(s, p, q, w, margin);
                ojson offs = ojson::array();
                for (auto& u : set) offs.push_back(pair_json(u));
                auto nw = gluing::net_witness(set, w);
                ojson j{{"window", w}, {"margin", margin}, {"count", set.size()}, {"offsets", offs}};
                j["net_witness"] = nw ? ojson{{"anchor", pair_json(nw->anchor)}, {"period", nw->period}} : ojson(nullptr);
                emit(j);
            } else {
                auto r = gluing::gap_estimate(s, n, w, margin, {threads});
                ojson gaps = ojson::array();
                for (auto& g : r.gaps) gaps.push_back(g ? ojson(*g) : ojson(nullptr));
                ojson j{{"n", r.n}, {"margin", r.margin}};
                j["min_uniform_gap"] = r.min_uniform_gap ? ojson(*r.min_uniform_gap) : ojson(nullptr);
                j["pairs"] = r.pair_count;
                j["class_hint"] = gluing::hint_name(r.class_hint);
                j["window"] = r.window;
                j["gaps"] = gaps;
                j["residual"] = r.residual;
                emit(j);
            }
        } else if (*rsup) {
            const Pattern& p = robinson::supertile(order, parse_quad(orientation));
            if (!svg.empty()) write_text(svg, render::render_robinson(p));
            if (!out.empty() || svg.empty()) emit(robinson_pattern_json(p), out);
        } else if (*rpet) {
            auto h = robinson::extract_petals(pattern_from_json(read_json_file(in), robinson::sft()));
            ojson ps = ojson::array();
            for (auto& pt : h.petals) {
                ojson corners = ojson::array();
                for (auto& c : pt.corners) corners.push_back(pair_json(c));
                ps.push_back({{"order", pt.order},
                              {"side", pt.side()},
                              {"corners", corners},
                              {"support", pt.support()},
                              {"parent", pt.parent},
                              {"children", pt.children}});
            }
            ojson partial = ojson::array();
            for (auto& c : h.partial) partial.push_back(pair_json(c));
            emit(ojson{{"petals", ps}, {"partial", partial}, {"missing_children", h.missing_children}});
        } else if (*rcom) {
            auto c = robinson::complete_block(pattern_from_json(read_json_file(in), robinson::sft()));
            ojson j{{"order", c.order},
                    {"orientation", robinson::quad_name(c.orientation)},
                    {"dx", c.dx},
                    {"dy", c.dy},
                    {"supertile", robinson_pattern_json(*c.supertile)}};
            emit(j, out);
        } else if (*dct || *dcp || *dsh) {
            const SftDefinition& s = delta::sft();
            Pattern p = read_pattern(in, s);
            Pattern r = *dct ? delta::complete_T(p) : *dcp ? delta::compactify(p) : delta::shift_curves(p, t);
            emit(ordered(pattern_to_json(r, s.alphabet)), out);
        } else if (*dis) {
            SftDefinition s = load_sft(sft_name);
            std::size_t ri = 0;
            bool any = false;
            for (auto* o : dis->parse_order()) {
                if (o == opt_r) {
                    s = distort::distort_sft_r(s, rs.at(ri++)).derived;
                } else if (o == opt_rho) {
                    s = distort::rotate_sft(s);
                } else if (o == opt_da) {
                    s = distort::distort_sft(s).derived;
                } else {
                    continue;
                }
                any = true;
            }
            if (!any) s = distort::distort_sft(s).derived;
            emit(ordered(sft_to_json(s)), out);
        } else if (*ent) {
            SftDefinition s = load_sft(sft_name);
            if (shift_r) {
                entropy::ShiftOptions o;
                o.strip_width = strip_width;
                if (max_height > 0) o.max_height = max_height;
                emit(ordered(entropy::to_json(entropy::entropy_shift_check(s, *shift_r, o))));
            } else {
                auto r = entropy::entropy_estimate(s, max_n, strip_width, {max_height});
                r.target = target;
                if (!csv.empty()) write_text(csv, entropy::to_csv(r));
                emit(ordered(entropy::to_json(r)));
            }
        } else if (*pfind || *pcon || *pdec) {
            SftDefinition s = load_sft(sft_name);
            auto f = read_gap_table(f_path, f_const);
            if (*pfind) {
                emit(ordered(periodic::to_json(periodic::find_periodic_point(s, f, n), s)), out);
            } else if (*pcon) {
                auto c = periodic::periodic_point_containing(s, read_pattern(block_path, s), f);
                ojson j = ordered(periodic::to_json(c.domain, s));
                j["offset"] = pair_json(c.offset);
                j["k"] = c.k;
                emit(j, out);
            } else {
                emit(ojson{{"member", periodic::decide_membership(s, read_pattern(block_path, s), f)}}, out);
            }
        } else if (*ref) {
            SftDefinition s = load_sft(sft_name);
            ojson ps = ojson::array();
            for (auto& p : distort::refute_period(s, max_period)) ps.push_back(pair_json(p));
            emit(ojson{{"max", max_period}, {"periods", ps}});
        } else if (*ren) {
            json pj = read_json_file(in);
            render::RenderStyle st;
            st.draw_petals = petals;
            if (robinson_symbols(pj)) {
                write_text(out, render::render_robinson(pattern_from_json(pj, robinson::sft()), st));
            } else {
                std::vector<std::string> alphabet;
                std::map<std::string, int> ids;
                Pattern p;
                for (auto& c : pj.at("cells")) {
                    auto sym = c.at(2).get<std::string>();
                    auto [it, fresh] = ids.emplace(sym, static_cast<int>(alphabet.size()));
                    if (fresh) alphabet.push_back(sym);
                    p.set(c.at(0).get<int>(), c.at(1).get<int>(), it->second);
                }
                write_text(out, render::render_pattern(p, alphabet, st));
            }
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}

#include <gtest/gtest.h>

#include <sftkit/delta.hpp>
#include <sftkit/robinson.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace sftkit;
namespace fs = std::filesystem;

namespace {

struct Run {
    int rc = 0;
    std::string out, err;
};

const fs::path& tmp() {
    static const fs::path d = [] {
        fs::path p = fs::temp_directory_path() / ("sftkit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

Run run(const std::string& args) {
    fs::path err = tmp() / "stderr.txt";
    std::string cmd = std::string(SFTKIT_CLI_PATH) + " " + args + " 2>" + err.string();
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    for (std::size_t k; (k = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, k);
    int st = pclose(p);
    r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.err = slurp(err);
    return r;
}

std::string file(const std::string& name, const json& j) {
    fs::path p = tmp() / name;
    std::ofstream(p) << j.dump();
    return p.string();
}

// Output parses, and re-parsing its dump gives the same value.
json round_trip(const std::string& s) {
    json j = json::parse(s);
    EXPECT_EQ(json::parse(j.dump()), j);
    return j;
}

json delta_example(const std::string& key) {
    std::ifstream f(SFTKIT_DATA_DIR "/delta_examples.json");
    json ex = json::parse(f);
    Pattern p = delta::from_rows(ex.at(key).get<std::vector<std::string>>());
    return pattern_to_json(p, delta::sft().alphabet);
}

}  // namespace

TEST(Cli, CountChess) {
    auto r = run("count --sft chess --n 2");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out, "{\"n\":2,\"count\":2}\n");
}

TEST(Cli, CountCollect) {
    auto j = round_trip(run("count --sft even --n 2 --collect").out);
    EXPECT_EQ(j["count"], 7);
    EXPECT_EQ(j["blocks"].size(), 7u);
}

TEST(Cli, Glue) {
    auto r = run("glue --sft even --n 2 --window 6 --margin 2 --threads 2");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out.rfind("{\"n\":2,\"margin\":2,\"min_uniform_gap\":1,\"pairs\":49,\"class_hint\":\"constant\"", 0), 0u);
    auto cell = file("black.json", json{{"cells", {{0, 0, "■"}}}});
    auto j = round_trip(run("glue --sft chess --n 1 --window 4 --margin 1 --pair " + cell + " " + cell).out);
    EXPECT_EQ(j["net_witness"]["period"], 2);
}

TEST(Cli, RobinsonSupertileAndPetals) {
    auto st = (tmp() / "st2.json").string(), svg = (tmp() / "st2.svg").string();
    auto r = run("robinson supertile --order 2 --orientation sw --out " + st + " --svg " + svg);
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(slurp(svg).rfind("<svg", 0), 0u);
    Pattern p = pattern_from_json(json::parse(slurp(st)), robinson::sft());
    EXPECT_EQ(p, robinson::supertile(2, robinson::Quad::sw));
    auto j = round_trip(run("robinson petals --in " + st).out);
    EXPECT_EQ(j["petals"].size(), 5u);
}

TEST(Cli, RobinsonComplete) {
    Pattern b = robinson::supertile(3, robinson::Quad::ne).cropped({2, 3, 2, 2}).normalized();
    auto in = file("rb.json", pattern_to_json(b, robinson::sft().alphabet));
    auto j = round_trip(run("robinson complete --in " + in).out);
    EXPECT_EQ(j["order"], robinson::chi(2));
    Pattern st = pattern_from_json(j["supertile"], robinson::sft());
    EXPECT_TRUE(st.contains_at(b, j["dx"].get<int>(), j["dy"].get<int>()));
}

TEST(Cli, DeltaProcedures) {
    auto in = file("t_in.json", delta_example("T_input"));
    auto t = round_trip(run("delta complete-t --in " + in).out);
    EXPECT_EQ(pattern_from_json(t, delta::sft()), delta::from_rows(json::parse(slurp(SFTKIT_DATA_DIR "/delta_examples.json"))["T_output"].get<std::vector<std::string>>()));
    auto c = file("c_in.json", delta_example("compactify_output"));
    auto s = round_trip(run("delta shift --t 3 --in " + c).out);
    EXPECT_TRUE(delta::delta_check(pattern_from_json(s, delta::sft())).empty());
    EXPECT_EQ(run("delta compactify --in " + c).rc, 0);
}

TEST(Cli, DistortChain) {
    auto r = run("distort --sft trivial --r 1 --rho --r 1");
    EXPECT_EQ(r.rc, 0);
    auto j = round_trip(r.out);
    EXPECT_EQ(j["derivation"]["operators"], json::array({"d_r:1", "rho", "d_r:1"}));
    EXPECT_EQ(run("distort --sft trivial --r 1 --rho --r 1").out, r.out);
    auto f = file("derived.json", j);
    auto c = round_trip(run("count --sft " + f + " --n 1").out);
    EXPECT_EQ(c["count"], 7);
}

TEST(Cli, Entropy) {
    auto csv = (tmp() / "e.csv").string();
    auto j = round_trip(run("entropy --sft chess --max-n 3 --strip-width 4 --target 0 --csv " + csv).out);
    EXPECT_EQ(j["per_n"][2]["count"], "2");
    EXPECT_EQ(j["target"], 0.0);
    EXPECT_EQ(slurp(csv).rfind("n,count,ratio,upper,lower\n", 0), 0u);
    auto s = round_trip(run("entropy --sft trivial --shift 1 --max-height 6").out);
    EXPECT_TRUE(s["inequality_holds"].get<bool>());
}

TEST(Cli, Periodic) {
    auto d = round_trip(run("periodic find --sft chess --f-const 1 --n 4").out);
    EXPECT_EQ(d["period"], json::array({2, 2}));
    auto table = file("f.json", json::array({1, 1, 1}));
    auto blk = file("diag.json", json{{"cells", {{0, 0, "□"}, {1, 0, "■"}, {0, 1, "■"}, {1, 1, "□"}}}});
    auto c = round_trip(run("periodic containing --sft even --block " + blk + " --f " + table).out);
    EXPECT_TRUE(c.contains("offset"));
    EXPECT_EQ(run("periodic decide --sft even --block " + blk + " --f " + table).out, "{\"member\":true}\n");
    auto bad = file("bad.json", json{{"cells", {{0, 0, "■"}, {1, 0, "■"}}}});
    EXPECT_EQ(run("periodic decide --sft even --block " + bad + " --f-const 1").out, "{\"member\":false}\n");
}

TEST(Cli, RefutePeriod) {
    auto j = round_trip(run("refute-period --sft chess --max 2").out);
    EXPECT_EQ(j["periods"], json::parse("[[2,2]]"));
}

TEST(Cli, Render) {
    auto in = file("d.json", delta_example("curves_figure"));
    auto out = (tmp() / "d.svg").string();
    EXPECT_EQ(run("render --in " + in + " --out " + out).rc, 0);
    std::string s = slurp(out);
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("<polygon"), std::string::npos);
    auto st = (tmp() / "st3.json").string();
    run("robinson supertile --order 3 --orientation nw --out " + st);
    auto svg = (tmp() / "st3.svg").string();
    EXPECT_EQ(run("render --in " + st + " --out " + svg + " --petals").rc, 0);
    EXPECT_EQ(slurp(svg), (run("render --in " + st + " --out " + svg + " --petals"), slurp(svg)));
}

TEST(Cli, Errors) {
    auto r = run("count --sft nosuch --n 2");
    EXPECT_EQ(r.rc, 1);
    EXPECT_EQ(json::parse(r.err)["error"], "UnknownSft");
    EXPECT_EQ(run("count --n 2").rc, 2);
    EXPECT_EQ(run("frobnicate").rc, 2);
    auto bad = file("bad2.json", json{{"cells", {{0, 0, "■"}, {1, 0, "■"}}}});
    r = run("periodic containing --sft even --block " + bad + " --f-const 1");
    EXPECT_EQ(r.rc, 1);
    EXPECT_EQ(json::parse(r.err)["error"], "WitnessUnavailable");
    r = run("distort --sft trivial --r 0");
    EXPECT_EQ(json::parse(r.err)["error"], "RZero");
}

TEST(Cli, ThreadsFromEnvironment) {
    auto a = run("glue --sft even --n 1 --window 4 --margin 1");
    setenv("SFTKIT_THREADS", "3", 1);
    auto b = run("glue --sft even --n 1 --window 4 --margin 1");
    unsetenv("SFTKIT_THREADS");
    EXPECT_EQ(a.out, b.out);
}

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int exit = -1;
    std::string out;
    json doc() const { return json::parse(out); }
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SIDON_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("sidon-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

} // namespace

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("construct singer --q 6").exit, 2);
    EXPECT_EQ(run("search planar --n 6").exit, 3);
    EXPECT_EQ(run("search planar --n 4").exit, 0);
    EXPECT_EQ(run("--max-nodes 5 search planar --n 7").exit, 4);
    EXPECT_EQ(run("verify dset --group 7 --elements 0,1,2").exit, 5);
    EXPECT_EQ(run("verify dset --group 7 --elements 0,1,3").exit, 0);
    EXPECT_EQ(run("nonsense").exit, 2);
    EXPECT_EQ(run("bounds --h 2").exit, 2);
    EXPECT_EQ(run("search min-group --h 2 --k 4 --max-v 12").exit, 3);
    std::ofstream(path("bad.json")) << "{bad";
    EXPECT_EQ(run("verify dset --set " + path("bad.json")).exit, 2);
    std::ofstream(path("wrong.json")) << R"({"schema":"sidon-lattice/1","type":"code","basis":[[1,2],[2,4]]})";
    EXPECT_EQ(run("verify perfect --code " + path("wrong.json") + " --r 1").exit, 2);
}

TEST_F(Cli, JsonErrorResult) {
    auto r = run("--json construct singer --q 6");
    EXPECT_EQ(r.exit, 2);
    auto j = r.doc();
    EXPECT_EQ(j["schema"], "sidon-lattice/1");
    EXPECT_EQ(j["status"], "error");
    EXPECT_EQ(j["error"]["code"], "NotPrimePower");
}

TEST_F(Cli, ConstructVerifyDecodeSimulate) {
    ASSERT_EQ(run("construct singer --q 3 --out " + path("s3.json")).exit, 0);
    auto v = run("--json verify dset --set " + path("s3.json"));
    ASSERT_EQ(v.exit, 0);
    EXPECT_EQ(v.doc()["payload"]["params"]["lambda"], 1);

    ASSERT_EQ(run("code build --set " + path("s3.json") + " --out " + path("c3.json")).exit, 0);
    auto p = run("--json verify perfect --code " + path("c3.json") + " --r 1");
    EXPECT_EQ(p.exit, 0);

    auto d = run("--json decode --code " + path("c3.json") + " --word 4,4,12");
    ASSERT_EQ(d.exit, 0);
    auto dj = d.doc()["payload"];
    EXPECT_EQ(dj["codeword"], json({4, 3, 0}));
    EXPECT_EQ(dj["error"], json({0, 1, -1}));
    EXPECT_EQ(run("--json code decode --code " + path("c3.json") + " --word 4,4,12").doc()["payload"], dj);

    auto s1 = run("--json --seed 9 simulate --code " + path("c3.json") + " --trials 2000");
    ASSERT_EQ(s1.exit, 0);
    EXPECT_EQ(s1.doc()["payload"]["corrected"], 2000);
    auto o1 = run("--json --seed 9 simulate --code " + path("c3.json") + " --trials 2000 --mode overload");
    auto o4 = run("--json --seed 9 --threads 4 simulate --code " + path("c3.json") + " --trials 2000 --mode overload");
    EXPECT_EQ(o1.doc()["payload"], o4.doc()["payload"]);
    EXPECT_EQ(run("simulate --code " + path("c3.json") + " --trials 10").exit, 2);  // no seed
}

TEST_F(Cli, BhSetRoundTrip) {
    ASSERT_EQ(run("construct bose-chowla --q 3 --h 2 --out " + path("b.json")).exit, 0);
    EXPECT_EQ(run("verify bh --set " + path("b.json") + " --h 2").exit, 0);
    ASSERT_EQ(run("code build --set " + path("b.json") + " --out " + path("bc.json")).exit, 0);
    EXPECT_EQ(run("verify tiling --code " + path("bc.json") + " --rplus 1 --rminus 1").exit, 5);
    auto cover = run("--json verify cover --code " + path("bc.json") + " --r 1");
    EXPECT_EQ(cover.exit, 5);
    EXPECT_EQ(cover.doc()["payload"]["i"], 1);
}

TEST_F(Cli, Families) {
    ASSERT_EQ(run("construct perfect-a2 --r 2 --out " + path("a2.json")).exit, 0);
    EXPECT_EQ(run("verify perfect --code " + path("a2.json") + " --r 2").exit, 0);
    ASSERT_EQ(run("construct tiling-s2 --r 1 --out " + path("s2.json")).exit, 0);
    EXPECT_EQ(run("verify tiling --code " + path("s2.json") + " --rplus 2 --rminus 1").exit, 0);
    EXPECT_EQ(run("verify perfect --code " + path("s2.json") + " --r 1").exit, 5);
    auto w = run("--json decode --code " + path("s2.json") + " --word 1,1 --rplus 2 --rminus 1");
    EXPECT_EQ(w.exit, 0);
}

TEST_F(Cli, NumbersAndSearches) {
    auto b = run("--json bounds --h 2 --k 4");
    ASSERT_EQ(b.exit, 0);
    bool saw = false;
    const json bj = b.doc();
    for (const auto& r : bj["payload"]["bounds"])
        if (r["formula_id"] == "phi_k") {
            EXPECT_EQ(r["exact"]["text"], "9");
            saw = true;
        }
    EXPECT_TRUE(saw);
    EXPECT_EQ(run("--json shape size --n 3 --rplus 2 --rminus 2").doc()["payload"]["size"], 55);
    auto pts = run("--json shape points --n 2 --rplus 1 --rminus 1").doc()["payload"]["points"];
    EXPECT_EQ(pts.size(), 7u);
    auto m = run("--json search min-group --h 2 --k 4 --max-v 20");
    ASSERT_EQ(m.exit, 0);
    EXPECT_EQ(m.doc()["payload"]["phi"], 13);
    auto ppc = run("--json experiment ppc --n-max 6");
    ASSERT_EQ(ppc.exit, 0);
    EXPECT_EQ(ppc.doc()["payload"]["rows"].size(), 6u);
    EXPECT_EQ(run("experiment cyclicity --q-max 4").exit, 0);
}

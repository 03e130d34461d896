#include "perspace.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace perspace;

namespace {

struct Run {
    int code = -1;
    std::string out;
    Json json() const { return Json::parse(out); }
};

std::string fixture(const std::string& name) { return std::string(PERSPACE_FIXTURES) + "/" + name; }

Run cli(const std::string& args) {
    std::string cmd = std::string(PERSPACE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool has_point(const Json& list, const Json& u, const Json& v, std::size_t m) {
    for (const auto& c : list)
        if (c["u"] == u && c["multiplicity"] == m && (v.is_null() ? !c.contains("v") : c["v"] == v)) return true;
    return false;
}

} // namespace

TEST(Cli, ComputeE1) {
    auto r = cli("compute " + fixture("E1.mfc") + " --degree 0");
    ASSERT_EQ(r.code, 0);
    auto j = r.json();
    ASSERT_EQ(j["degrees"].size(), 1u);
    const auto& d0 = j["degrees"][0];
    EXPECT_TRUE(has_point(d0["proper"], Json{"0", "0"}, Json{"2", "1"}, 1));
    EXPECT_TRUE(has_point(d0["at_infinity"], Json{"0", "-1"}, nullptr, 1));
    EXPECT_GT(j["rays"]["count"].get<int>(), 0);
}

TEST(Cli, ComputeTrivialCases) {
    for (const auto& args : {"compute " + fixture("empty.mfc"), "compute " + fixture("E1.mfc") + " --degree 3"}) {
        auto r = cli(args);
        ASSERT_EQ(r.code, 0) << args;
        for (const auto& d : r.json()["degrees"]) {
            EXPECT_TRUE(d["proper"].empty());
            EXPECT_TRUE(d["at_infinity"].empty());
        }
    }
}

TEST(Cli, ComputeCsv) {
    auto r = cli("compute " + fixture("E1.mfc") + " --degree 0 --csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("degree,kind,u,v,multiplicity,persistence", 0), 0u);
    EXPECT_NE(r.out.find("0,proper,0;0,2;1,1,1,"), std::string::npos);
}

TEST(Cli, OutputFile) {
    auto path = std::filesystem::temp_directory_path() / "perspace_cli_out.json";
    std::filesystem::remove(path);
    auto r = cli("compute " + fixture("C1.mfc") + " --degree 1 --output " + path.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    auto j = Json::parse(in);
    EXPECT_EQ(j["degrees"][0]["at_infinity"].size(), 1u);
    std::filesystem::remove(path);
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(cli("compute /nonexistent/file.mfc").code, 2);
    auto bad = std::filesystem::temp_directory_path() / "perspace_bad.mfc";
    std::ofstream(bad) << "n 1\ns 0 1 | 0\n";
    EXPECT_EQ(cli("compute " + bad.string()).code, 2);
    std::filesystem::remove(bad);
    EXPECT_EQ(cli("compute " + fixture("E1.mfc") + " --field 4").code, 2);
    EXPECT_EQ(cli("pbn " + fixture("E1.mfc") + " -u 0 -v 1,1").code, 2);
    EXPECT_EQ(cli("pbn " + fixture("E1.mfc") + " -u 2,2 -v 1,1").code, 2);
    EXPECT_EQ(cli("no-such-command").code, 2);
    EXPECT_EQ(cli("diagram " + fixture("E1.mfc")).code, 2);
}

TEST(Cli, PointQueries) {
    auto pbn = cli("pbn " + fixture("E1.mfc") + " -u 0,0 -v 2,1 --degree 0");
    ASSERT_EQ(pbn.code, 0);
    EXPECT_EQ(pbn.json()[0]["value"], 1);

    auto mu = cli("mu " + fixture("E1.mfc") + " -u 0,0 -v 2,1 --degree 0");
    ASSERT_EQ(mu.code, 0);
    EXPECT_EQ(mu.json()[0]["multiplicity"], 1);
    EXPECT_EQ(mu.json()[0]["epsilon"], "1/4");

    auto inf = cli("mu " + fixture("E1.mfc") + " -u 0,-1 --degree 0");
    EXPECT_EQ(inf.json()[0]["multiplicity"], 1);

    auto w = cli("window-count " + fixture("E1.mfc") + " -u 0,0 -e 1/2,1/2 --degree 0,1");
    ASSERT_EQ(w.code, 0);
    EXPECT_EQ(w.json()[0]["count"], 1);
    EXPECT_EQ(w.json()[1]["count"], 0);
}

TEST(Cli, ReconstructCheck) {
    auto e1 = cli("reconstruct-check " + fixture("E1.mfc") + " --trials 20 --seed 7 --degree 0");
    ASSERT_EQ(e1.code, 0);
    EXPECT_EQ(e1.json()["checks"], 20);
    EXPECT_EQ(e1.json()["matches"], 20);

    EXPECT_EQ(cli("reconstruct-check " + fixture("empty.mfc") + " --trials 3").code, 0);

    auto one = cli("reconstruct-check --parameters 1 --trials 10 --seed 2");
    ASSERT_EQ(one.code, 0);
    EXPECT_GT(one.json()["diagram_checks"].get<int>(), 0);
    EXPECT_TRUE(one.json()["pass"].get<bool>());

    EXPECT_EQ(cli("reconstruct-check --trials 10 --seed 5").code, 0);
}

TEST(Cli, StabilityCheck) {
    auto fixtures = cli("stability-check " + fixture("E1.mfc") + " " + fixture("E1g.mfc") + " --degree 0");
    ASSERT_EQ(fixtures.code, 0);
    EXPECT_EQ(fixtures.json()["epsilon"], "1/4");
    EXPECT_TRUE(fixtures.json()["pass"].get<bool>());

    auto zero = cli("stability-check " + fixture("E1.mfc") + " --perturb 0 --seed 1");
    ASSERT_EQ(zero.code, 0);
    EXPECT_EQ(zero.json()["epsilon"], "0");

    auto noisy = cli("stability-check " + fixture("E1.mfc") + " --perturb 1/8 --seed 3 --degree 0 1");
    ASSERT_EQ(noisy.code, 0);
    EXPECT_EQ(noisy.json()["reports"].size(), 2u);

    auto path = cli("stability-check " + fixture("E1.mfc") + " " + fixture("E1g.mfc") + " --path-steps 4 --degree 0,1");
    ASSERT_EQ(path.code, 0);
    EXPECT_EQ(path.json()["path"].size(), 8u);
    for (const auto& step : path.json()["path"]) EXPECT_EQ(step["epsilon"], "1/16");

    EXPECT_EQ(cli("stability-check " + fixture("E1.mfc") + " " + fixture("C1.mfc")).code, 2);
    EXPECT_EQ(cli("stability-check " + fixture("E1.mfc")).code, 2);
}

TEST(Cli, Diagram) {
    auto r = cli("diagram " + fixture("interval_1d.mfc") + " --degree 0");
    ASSERT_EQ(r.code, 0);
    auto pairs = r.json()[0]["pairs"];
    ASSERT_EQ(pairs.size(), 2u);
    EXPECT_EQ(pairs[0]["birth"], "0");
    EXPECT_EQ(pairs[0]["death"], "1");
    EXPECT_EQ(pairs[1]["death"], "inf");
}

TEST(Cli, CriticalCheck) {
    EXPECT_EQ(cli("critical-check " + fixture("E1.mfc")).code, 0);
    EXPECT_EQ(cli("critical-check " + fixture("C1.mfc") + " --degree 1").code, 0);
    auto probe = cli("critical-check " + fixture("E1.mfc") + " --degree 0 --at 1,1/2 --at 0,0");
    ASSERT_EQ(probe.code, 0);
    auto probes = probe.json()["degrees"][0]["probes"];
    EXPECT_FALSE(probes[0]["critical"].get<bool>());
    EXPECT_TRUE(probes[1]["critical"].get<bool>());
}

TEST(Cli, RandomComplexIsReproducible) {
    auto a = cli("random-complex --size 10 -n 2 --seed 1");
    auto b = cli("random-complex --size 10 -n 2 --seed 1");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto K = parse_complex(a.out);
    EXPECT_TRUE(validate(K).ok());
    EXPECT_EQ(K.parameter_count(), 2u);
    EXPECT_NE(cli("random-complex --size 10 -n 2 --seed 2").out, a.out);

    auto cloud = parse_complex(cli("random-complex --size 6 --dimension 0 --seed 4").out);
    EXPECT_EQ(cloud.size(), 6u);
    EXPECT_EQ(cloud.dimension(), 0);
}

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "pbwdeg/report.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
};

CliResult run(const std::string &args) {
    const std::string cmd = std::string(PBWDEG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_of(const CliResult &r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST(Cli, CheckF0A1P3Json) {
    const CliResult r = run("check-f0 --cartan A1 --p 3 --format json --no-timing");
    ASSERT_EQ(r.code, 0);
    const auto j = json_of(r);
    EXPECT_TRUE(j["nonzero"].get<bool>());
    EXPECT_EQ(j["weight"], nlohmann::json::array({4}));
    EXPECT_EQ(j["degree"], 2);
    EXPECT_EQ(j["tool_version"], "1.0.0");
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    EXPECT_EQ(keys, (std::vector<std::string>{"cartan", "degree", "elapsed_ms", "graded_dims", "nonzero", "p",
                                              "tool_version", "weight"}));
}

TEST(Cli, CheckF0A2P2) {
    const CliResult r = run("check-f0 --cartan A2 --p 2 --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json_of(r)["nonzero"].get<bool>());
}

TEST(Cli, CheckMultB2Csv) {
    const CliResult r = run("check-mult --cartan B2 --lambda 1,0 --mu 0,1 --p 2 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("cartan,p,lam,mu,n,dim_phi_Vn,dim_im_cap_Tn,gr_image,", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, OutputIsDeterministic) {
    const std::string args = "check-mult --cartan G2 --lambda 1,0 --mu 1,0 --p 2 --format json";
    EXPECT_EQ(run(args).out, run(args).out);
    const std::string f0 = "check-f0 --cartan C2 --p 2 --format json --no-timing";
    EXPECT_EQ(run(f0).out, run(f0).out);
}

TEST(Cli, WarmAndColdCacheGiveIdenticalOutput) {
    const auto dir = std::filesystem::temp_directory_path() / "pbwdeg_test_cli_cache";
    std::filesystem::remove_all(dir);
    const std::string args = "--format json --no-timing --cache-dir " + dir.string();
    const CliResult cold = run("check-f0 --cartan B2 --p 2 " + args);
    ASSERT_FALSE(std::filesystem::is_empty(dir));
    const CliResult warm = run("check-f0 --cartan B2 --p 2 " + args);
    const CliResult none = run("check-f0 --cartan B2 --p 2 --format json --no-timing");
    EXPECT_EQ(cold.code, 0);
    EXPECT_EQ(cold.out, warm.out);
    EXPECT_EQ(cold.out, none.out);

    const std::string build = "build-module --cartan G2 --lambda 1,1 --p 3 --format json --cache-dir " + dir.string();
    const CliResult b1 = run(build);
    const CliResult b2 = run(build);
    EXPECT_EQ(b1.out, b2.out);
    EXPECT_EQ(json_of(b1)["dim"], 64);
    std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("check-f0 --cartan E8 --p 2").code, 1);
    EXPECT_EQ(run("check-f0 --cartan A2 --p 4").code, 1);
    EXPECT_EQ(run("weyl-dim --cartan A2 --lambda 1").code, 1);
    EXPECT_EQ(run("weyl-dim --cartan A2 --lambda -1,0").code, 1);
    EXPECT_EQ(run("check-mult --cartan A2 --lambda 1,0 --p 2").code, 1);
    EXPECT_EQ(run("no-such-command").code, 1);
    EXPECT_EQ(run("check-f0 --cartan D4 --p 2").code, 2);
    EXPECT_EQ(run("check-f0 --cartan A2 --p 2 --ceiling 5").code, 2);
    EXPECT_EQ(run("weyl-dim --cartan A2 --lambda 1,1").code, 0);
}

TEST(Cli, SweepSkipsOversizedTypes) {
    const CliResult r = run("check-f0-sweep --cartans A1,D4 --primes 2,3 --jobs 2 --no-timing --format json");
    ASSERT_EQ(r.code, 0);
    const auto res = json_of(r)["results"];
    ASSERT_EQ(res.size(), 4u);
    EXPECT_EQ(res[0]["status"], "ok");
    EXPECT_EQ(res[1]["status"], "ok");
    EXPECT_EQ(res[2]["status"], "skipped");
    EXPECT_NE(res[2]["reason"].get<std::string>().find("531441"), std::string::npos);
    EXPECT_EQ(res[3]["status"], "skipped");
}

TEST(Cli, SweepIsIndependentOfJobCount) {
    const std::string base = "check-f0-sweep --cartans A1,A2,B2 --primes 2,3 --no-timing --format json --jobs ";
    EXPECT_EQ(run(base + "1").out, run(base + "4").out);
}

TEST(Cli, ValidateAndOtherSubcommands) {
    EXPECT_EQ(run("validate --cartan C2 --lambda 2,2 --p 2 --trials 3").code, 0);
    EXPECT_EQ(json_of(run("weyl-dim --cartan D4 --lambda 0,1,0,0 --format json"))["weyl_dim"], "28");
    EXPECT_EQ(json_of(run("root-system --cartan B3 --format json"))["num_positive_roots"], 9);
    EXPECT_EQ(json_of(run("pbw-dims --cartan A2 --lambda 1,1 --p 5 --format json"))["graded_dims"],
              nlohmann::json::array({1, 3, 4}));
    const auto gen = json_of(run("check-gen --cartan A1 --lambda 1 --p 2 --format json"));
    EXPECT_TRUE(gen["generated"].get<bool>());
    EXPECT_EQ(gen["rows"].size(), 2u);
    const auto h = json_of(run("hilbert --cartan A1 --lambda 1 --p 2 --n-max 3 --format json"));
    EXPECT_EQ(h["h"], nlohmann::json::array({1, 2, 3, 4}));
}

TEST(Report, CsvHasHeaderAndOneRowPerDegree) {
    pbwdeg::F0Report r;
    r.cartan = "A1";
    r.p = 2;
    r.weight = pbwdeg::Weight{2};
    r.degree = 1;
    r.nonzero = true;
    r.graded_dims = {1, 1, 1};
    const std::string csv = pbwdeg::report::to_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "cartan,p,weight,degree,nonzero,n,graded_dim");
}

TEST(Report, HilbertJsonFields) {
    pbwdeg::HilbertReport h;
    h.cartan = "A1";
    h.lam = pbwdeg::Weight{1};
    h.lam_star = pbwdeg::Weight{1};
    h.h = {1, 2};
    h.weyl_dims = {1, 2};
    h.profile = {{1}, {1, 1}};
    const auto j = pbwdeg::report::to_json(h);
    EXPECT_EQ(j["h"], nlohmann::ordered_json::array({1, 2}));
    EXPECT_EQ(j["tool_version"], "1.0.0");
}

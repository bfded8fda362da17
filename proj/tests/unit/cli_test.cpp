#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "gdiv/io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(GDIV_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string example(const std::string& name) { return std::string(GDIV_EXAMPLES_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const json& j) {
    fs::path p = fs::temp_directory_path() / ("gdiv_cli_test_" + name + ".json");
    std::ofstream(p) << j.dump();
    return p.string();
}

}  // namespace

TEST(Cli, TotallyRamifiedSK1) {
    CliRun r = run("sk1 " + example("tot_ram_q5_n4_e2.json"));
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["sk1"]["invariant_factors"], json({2}));
    EXPECT_EQ(j["method"], "TotallyRamifiedMu");
}

TEST(Cli, ClassifyUnramified) {
    CliRun r = run("classify " + example("unramified.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["classification"], "Unramified");
}

TEST(Cli, Deterministic) {
    for (const char* name : {"sk1", "wedderburn", "norm-preimage", "congruence-check"}) {
        std::string file = std::string(name) == "sk1"                ? "ring_gf9.json"
                           : std::string(name) == "wedderburn"       ? "wedderburn_gf9_z.json"
                           : std::string(name) == "norm-preimage"    ? "norm_preimage.json"
                                                                     : "congruence_gf9.json";
        CliRun a = run(std::string(name) + " --seed 5 " + example(file));
        CliRun b = run(std::string(name) + " --seed 5 " + example(file));
        ASSERT_EQ(a.code, 0) << name;
        EXPECT_EQ(a.out, b.out) << name;
    }
}

TEST(Cli, AllExamplesSucceed) {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"sk1", "tot_ram_q5_n4_e2.json"},     {"classify", "ring_q5_tot_ram.json"},
        {"sk1-brute", "ring_gf9.json"},       {"ck1", "ring_gf9.json"},
        {"sh1", "ring_gf9.json"},             {"nondegenerate", "gmodule_klein.json"},
        {"skew-divisor", "skew_divisor.json"}, {"skew-reduce", "skew_reduce.json"},
        {"hensel", "hensel_sqrt.json"},
        {"hensel", "hensel_factor.json"},     {"norm-preimage", "norm_preimage.json"},
        {"wedderburn", "wedderburn_gf9_z.json"}, {"congruence-check", "congruence_gf9.json"}};
    for (auto& [cmd, file] : cases) {
        CliRun r = run(cmd + " " + example(file));
        EXPECT_EQ(r.code, 0) << cmd << " " << file;
        EXPECT_NO_THROW((void)json::parse(r.out)) << cmd << " " << file;
    }
}

TEST(Cli, BruteForceMatchesFormulaOnCorpus) {
    for (auto& e : gdiv::corpus::all()) {
        gdiv::MonomialGradedRing E(e.data);
        std::string path = write_temp(e.name, gdiv::io::ring_to(E));
        CliRun f = run("sk1 " + path);
        CliRun b = run("--budget 1000000 sk1-brute " + path);
        fs::remove(path);
        if (E.grade_index() > 64) {
            EXPECT_EQ(b.code, 3) << e.name;
            continue;
        }
        ASSERT_EQ(f.code, 0) << e.name;
        ASSERT_EQ(b.code, 0) << e.name;
        EXPECT_EQ(json::parse(f.out)["sk1"].dump(), json::parse(b.out)["sk1"].dump()) << e.name;
    }
}

TEST(Cli, ExitCodes) {
    std::string bad = write_temp("bad", json::parse(R"({"q": 3})"));
    EXPECT_EQ(run("sk1 " + bad).code, 1);
    std::string foreign =
        write_temp("foreign", json::parse(R"({"q":3,"m":2,"sigma":[1],"r":[2],"b":[0],"u":[[0]],"modulus":[1,0]})"));
    EXPECT_EQ(run("sk1-brute " + foreign).code, 2);
    EXPECT_EQ(run("wedderburn --budget 3 " + example("wedderburn_gf9_z.json")).code, 3);
    EXPECT_EQ(run("sk1 /nonexistent/file.json").code, 1);
    EXPECT_EQ(run("no-such-command x").code, 1);
    fs::remove(bad);
    fs::remove(foreign);
}

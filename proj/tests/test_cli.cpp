// Runs the built command-line tool against the sample specs.

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    std::string cmd = std::string(QUASIFREE_CLI) + " " + args + " 2>&1";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const char* name) { return std::string(QUASIFREE_SAMPLES) + "/" + name; }

nlohmann::json run_json(const std::string& args) {
    CliRun r = run(args);
    EXPECT_EQ(r.code, 0) << r.out;
    return nlohmann::json::parse(r.out);
}

std::string temp_spec(const std::string& text) {
    static int counter = 0;
    std::string path = ::testing::TempDir() + "quasifree_spec_" + std::to_string(counter++) + ".json";
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST(Cli, ClassifyMixedSigns) {
    auto j = run_json("classify --spec " + sample("z_mixed_signs.json"));
    EXPECT_EQ(j["purely_infinite"], true);
    EXPECT_EQ(j["af_embeddable"], "no");
    EXPECT_EQ(j["certificates"]["infinite_projection"]["uu* != chi"], true);
}

TEST(Cli, ClassifyIsByteStable) {
    CliRun a = run("classify --spec " + sample("real_sqrt2.json"));
    CliRun b = run("classify --spec " + sample("real_sqrt2.json"));
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, EvalExample) {
    auto j = run_json("eval --spec " + sample("z_positive.json"));
    EXPECT_EQ(j["result"], "S[1]\xC2\xB7" "chi{0}\xC2\xB7S*[1]");
    auto k = run_json("eval --spec " + sample("z_positive.json") + " 'S[2]*S*[2] + S[1]*S*[1]'");
    EXPECT_EQ(k["result"], "1");
}

TEST(Cli, DecomposeWritesReportAndDot) {
    std::string dot = ::testing::TempDir() + "quasifree_decompose.dot";
    auto j = run_json("decompose --spec " + sample("z_positive.json") + " --dot " + dot);
    EXPECT_EQ(j["K"], 1);
    EXPECT_EQ(j["summand_count"], 2);
    EXPECT_EQ(j["passed"], true);
    std::ifstream in(dot);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("digraph"), std::string::npos);
}

TEST(Cli, ScalingWithFlags) {
    auto j = run_json("scaling --spec " + sample("z2_cyclic.json") + " --x-set '[[0]]' --gamma0 '[1]'");
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["scaling_checks"]["x*x != xx*"], true);
}

TEST(Cli, VerifySuitePasses) {
    auto j = run_json("verify --spec " + sample("z_positive.json") + " --seed 5 --samples 20");
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["seed"], 5);
}

TEST(Cli, ExitCodes) {
    // Precondition: the weight semigroup of (1, 2) is not all of Z.
    CliRun r = run("scaling --spec " + sample("z_positive.json") + " --x-set '[[0]]' --gamma0 '[1]'");
    EXPECT_EQ(r.code, 2) << r.out;
    EXPECT_NE(r.out.find("precondition"), std::string::npos);
    // Construction: no shift bound over Z/2 with weights (1, 1).
    std::string spec = temp_spec(
        R"({"group":{"kind":"discrete","free_rank":0,"torsion":[2]},"omega":[[1],[1]],"regions":[[[0]]]})");
    r = run("decompose --spec " + spec);
    EXPECT_EQ(r.code, 2) << r.out;
    // Resource cap.
    r = run("decompose --spec " + sample("z_positive_three_points.json") + " --max-terms 5");
    EXPECT_EQ(r.code, 3) << r.out;
    // Precision: an enclosure that cannot separate the values.
    spec = temp_spec(
        R"({"group":{"kind":"real_line","basis":[{"name":"1","lo":"1","hi":"1"},{"name":"t","lo":"1","hi":"2"}]},)"
        R"("omega":[["1","0"],["0","1"]],"regions":[{"interval":[["0","0"],["3/2","0"]]}, {"interval":[["3/2","0"],["0","1"]]}]})");
    r = run("decompose --spec " + spec);
    EXPECT_EQ(r.code, 4) << r.out;
    // Argument errors.
    EXPECT_EQ(run("classify").code, 2);
    EXPECT_EQ(run("eval --spec " + sample("z_positive.json") + " 'S[7]'").code, 2);
    spec = temp_spec(R"({"group":{"kind":"discrete","free_rank":1},"omega":[[1,2],[3]]})");
    EXPECT_EQ(run("classify --spec " + spec).code, 2);
}

TEST(Cli, WritesOutputFile) {
    std::string out = ::testing::TempDir() + "quasifree_out.json";
    CliRun r = run("classify --spec " + sample("o_infinity_positive.json") + " --out " + out);
    EXPECT_EQ(r.code, 0);
    std::ifstream in(out);
    auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["algebra"], "O_infinity");
    EXPECT_EQ(j["af_embeddable"], "yes");
}

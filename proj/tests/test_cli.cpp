#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = ALTAFINI_DATA_DIR;

struct Result {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "altafini");
    std::ostringstream out, err;
    const int code = altafini::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

fs::path scratch(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "altafini_cli_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

const json* find_check(const json& report, const std::string& name) {
    for (const auto& c : report["cross_checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"analyze", "--bogus"}).code, 2);
}

TEST(Cli, AnalyzeExampleGraph) {
    const auto r = run({"analyze", "--graph", data("odd_graph.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = r.report();
    EXPECT_EQ(rep["result"]["balance"]["clustering"], json({1, -1, 1}));
    EXPECT_EQ(rep["result"]["strongly_connected"], true);
    EXPECT_EQ(rep["result"]["class"], "C_(+1,-1,+1)");
    EXPECT_EQ(rep["inputs"]["graph"]["sha256"].get<std::string>().size(), 64u);
    EXPECT_TRUE(rep.contains("version"));
}

TEST(Cli, AnalyzeSingleVertexAndMalformed) {
    const auto single = run({"analyze", "--graph", scratch("single.json", R"({"n": 1, "arcs": []})").string()});
    ASSERT_EQ(single.code, 0);
    EXPECT_EQ(single.report()["result"]["balance"]["clustering"], json({1}));

    const auto bad = run({"analyze", "--graph", scratch("bad.json", "{\"n\": ").string()});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("bad.json"), std::string::npos);
}

TEST(Cli, ClassifyAlternating) {
    const auto r = run({"classify", "--signal", data("alternating.json"), "--simulate", "--trials", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = r.report();
    EXPECT_EQ(rep["classification"]["balance"], "repeatedly_jointly_unbalanced");
    EXPECT_EQ(rep["classification"]["prediction"], "zero_consensus");
    EXPECT_EQ(rep["simulation_agreement"]["agreeing"], 5);
}

TEST(Cli, ClassifyConstantBalanced) {
    const auto rep = run({"classify", "--signal", data("constant_odd.json")}).report();
    EXPECT_EQ(rep["classification"]["balance"], "repeatedly_jointly_balanced");
    EXPECT_EQ(rep["classification"]["clustering"], json({1, -1, 1}));
    EXPECT_EQ(rep["classification"]["prediction"], "nonzero_modulus_consensus");
}

TEST(Cli, ClassifyUndecidableAndNonStronglyConnected) {
    EXPECT_EQ(run({"classify", "--signal", data("observed.json")}).code, 3);
    const auto chain = scratch("chain.json", R"({"mode": "constant", "matrix": [[1, 0], [0.5, 0.5]]})");
    const auto r = run({"classify", "--signal", chain.string()});
    EXPECT_EQ(r.code, 3);
    const auto rep = r.report();
    EXPECT_EQ(rep["error"]["kind"], "NotJointlyStronglyConnected");
    EXPECT_EQ(rep["error"]["window_start"], 1);
}

TEST(Cli, FullAlternatingPassesAllChecks) {
    const auto r = run({"full", "--signal", data("alternating.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = r.report();
    EXPECT_EQ(rep["status"], "ok");
    EXPECT_EQ(rep["stages"]["simulate"]["verdict"]["kind"], "zero_consensus");
    EXPECT_LT(rep["stages"]["simulate"]["empirical_rate"].get<double>(), 1.0);
    for (const char* stage : {"analyze", "lift", "classify", "simulate", "rate", "spectrum"})
        EXPECT_TRUE(rep["stages"].contains(stage)) << stage;
    EXPECT_TRUE(rep["stages"]["spectrum"].is_null());
    EXPECT_TRUE(rep["notices"].contains("spectrum"));
}

TEST(Cli, FullConstantBalancedConsistentClustering) {
    const auto rep = run({"full", "--signal", data("constant_odd.json")}).report();
    EXPECT_EQ(rep["status"], "ok");
    const json* rank = find_check(rep, "transition_matrix_rank_one");
    ASSERT_NE(rank, nullptr);
    EXPECT_TRUE((*rank)["passed"].get<bool>());
    const json* cons = find_check(rep, "clustering_consistency");
    ASSERT_NE(cons, nullptr);
    EXPECT_TRUE((*cons)["passed"].get<bool>());
    const json b = {1, -1, 1};
    EXPECT_EQ(rep["stages"]["classify"]["clustering"], b);
    EXPECT_EQ(rep["stages"]["simulate"]["verdict"]["clustering"], b);
    EXPECT_EQ(rep["stages"]["analyze"]["union_over_cycle"]["balance"]["clustering"], b);
}

TEST(Cli, FullIdentitySkipsRate) {
    const auto id = scratch("identity.json", R"({"mode": "constant", "matrix": [[1, 0], [0, 1]]})");
    const auto r = run({"full", "--signal", id.string(), "--steps", "50"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto rep = r.report();
    EXPECT_EQ(rep["stages"]["simulate"]["verdict"]["kind"], "undetermined");
    EXPECT_TRUE(rep["stages"]["rate"].is_null());
    EXPECT_TRUE(rep["notices"].contains("rate"));
}

TEST(Cli, SeedDeterminism) {
    const auto a = run({"--seed", "9", "full", "--signal", data("constant_unbalanced.json")});
    const auto b = run({"full", "--signal", data("constant_unbalanced.json"), "--seed", "9"});
    const auto c = run({"full", "--signal", data("constant_unbalanced.json"), "--seed", "10"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, SimulateWritesFiles) {
    const fs::path dir = fs::temp_directory_path() / "altafini_cli_test";
    fs::create_directories(dir);
    const auto traj = (dir / "traj.csv").string(), spread = (dir / "spread.csv").string(), out = (dir / "rep.json").string();
    const auto r = run({"simulate", "--signal", data("alternating.json"), "--steps", "100", "--out-trajectory", traj,
                        "--spread-csv", spread, "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(out);
    const json rep = json::parse(in);
    EXPECT_EQ(rep["horizon"], 100);
    EXPECT_EQ(rep["lift_consistency_max_deviation"], 0.0);
    EXPECT_TRUE(fs::file_size(traj) > 0);
    EXPECT_TRUE(fs::file_size(spread) > 0);

    const auto rate = run({"rate", "--signal", data("alternating.json"), "--mode", "unbalanced", "--trajectory", traj});
    EXPECT_EQ(rate.code, 3);  // the two graphs are individually balanced
}

TEST(Cli, RateAndSpectrumAndLift) {
    const auto rate = run({"rate", "--signal", data("constant_unbalanced.json")});
    ASSERT_EQ(rate.code, 0) << rate.err;
    EXPECT_EQ(rate.report()["rate"]["bound"]["kind"], "unbalanced");

    const auto spec = run({"spectrum", "--matrix", data("rooted.csv")});
    ASSERT_EQ(spec.code, 0) << spec.err;
    EXPECT_EQ(spec.report()["spectrum"]["verdict"], "single_eigenvalue_at_one");
    EXPECT_EQ(run({"spectrum", "--matrix", scratch("id.csv", "1,0\n0,1\n").string()}).code, 3);

    const auto lift = run({"lift", "--matrix", data("odd.csv")});
    ASSERT_EQ(lift.code, 0);
    EXPECT_EQ(lift.report()["structure"]["component1"], json({"1", "3", "2⁻"}));
    const auto csv = run({"lift", "--matrix", data("odd.csv"), "--format", "csv"});
    EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 6);
}

TEST(Cli, RowSumToleranceFlag) {
    const auto loose = scratch("loose.csv", "0.5,0.5000001\n0.5,0.5\n");
    EXPECT_EQ(run({"spectrum", "--matrix", loose.string()}).code, 2);
    EXPECT_EQ(run({"--row-tol", "1e-6", "spectrum", "--matrix", loose.string()}).code, 0);
}

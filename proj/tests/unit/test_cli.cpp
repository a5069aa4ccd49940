#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "lllab/cli.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("lllab_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

int invoke(std::vector<std::string> args, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = lllab::run(args, out, err);
    if (err_text) *err_text = err.str();
    return code;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Cli, YrastTable) {
    const auto dir = scratch("yrast");
    ASSERT_EQ(invoke({"yrast", "--n", "4", "--lmax", "16", "--out", dir.string()}), 0);
    const auto rows = read_csv(dir / "yrast.csv");
    ASSERT_EQ(rows.size(), 18u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"L", "dim", "I_L", "gap", "kernel_dim"}));
    EXPECT_EQ(rows[1][0], "0");
    EXPECT_NEAR(std::stod(rows[1][2]), 3 / std::numbers::pi, 1e-14);
    const auto meta = nlohmann::json::parse(slurp(dir / "metadata.json"));
    EXPECT_EQ(meta["command"], "yrast");
    EXPECT_EQ(meta["config"]["yrast"]["n"], "4");
    EXPECT_TRUE(meta.contains("wall_time_seconds"));
    EXPECT_TRUE(fs::exists(dir / "config.ini"));
}

TEST(Cli, PlasmaIsDeterministic) {
    const auto a = scratch("plasma_a"), b = scratch("plasma_b");
    const std::vector<std::string> base{"plasma", "--n", "16", "--m", "0", "--sweeps", "1500", "--burn-in", "300", "--seed", "7"};
    auto args_a = base, args_b = base;
    args_a.insert(args_a.end(), {"--out", a.string()});
    args_b.insert(args_b.end(), {"--out", b.string()});
    ASSERT_EQ(invoke(args_a), 0);
    ASSERT_EQ(invoke(args_b), 0);
    EXPECT_EQ(slurp(a / "density.csv"), slurp(b / "density.csv"));
    const auto meta = nlohmann::json::parse(slurp(a / "metadata.json"));
    EXPECT_EQ(meta["seed"], 7);
}

TEST(Cli, ConfigRoundTrip) {
    const auto a = scratch("cfg_a"), b = scratch("cfg_b");
    ASSERT_EQ(invoke({"trial", "--n", "3", "--m-max", "3", "--omega", "-0.5", "--k", "0.1", "--out", a.string()}), 0);
    ASSERT_EQ(invoke({"--config", (a / "config.ini").string(), "--out", b.string()}), 0);
    EXPECT_EQ(slurp(a / "trial.csv"), slurp(b / "trial.csv"));
}

TEST(Cli, PhasesRegimes) {
    const auto dir = scratch("phases");
    ASSERT_EQ(invoke({"phases", "--n", "5", "--omega-grid", "0.5,-0.6,-1.5", "--k-grid", "0.02", "--out", dir.string()}), 0);
    const auto rows = read_csv(dir / "phases.csv");
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1][3], "laughlin");
    EXPECT_EQ(rows[2][3], "annulus");
    EXPECT_EQ(rows[3][3], "thermal");
    EXPECT_EQ(rows[1][4], "0");
    EXPECT_EQ(rows[1][7], "ok");
}

TEST(Cli, ExitCodes) {
    std::string err;
    EXPECT_EQ(invoke({"yrast", "--bogus", "1"}, &err), lllab::kInputError);
    EXPECT_NE(err.find("Usage"), std::string::npos);
    EXPECT_EQ(invoke({}), lllab::kInputError);
    EXPECT_EQ(invoke({"ground", "--omega", "-1", "--k", "0", "--out", scratch("bad").string()}), lllab::kInputError);
    EXPECT_EQ(invoke({"trial", "--n", "9", "--out", scratch("big").string()}), lllab::kInputError);
    EXPECT_EQ(invoke({"meanfield", "--n", "32", "--tol", "1e-30", "--out", scratch("mf").string()}), lllab::kNotConverged);
}

TEST(Cli, GroundAndCompare) {
    const auto dir = scratch("ground");
    ASSERT_EQ(invoke({"ground", "--n", "3", "--omega", "0.001", "--out", dir.string()}), 0);
    const auto state = nlohmann::json::parse(slurp(dir / "ground_state.json"));
    EXPECT_EQ(state["L_star"], 6);
    const auto cmp = scratch("compare");
    ASSERT_EQ(invoke({"compare", "--n", "3", "--omega-grid", "0.5,2", "--restarts", "2", "--out", cmp.string()}), 0);
    const auto meta = nlohmann::json::parse(slurp(cmp / "metadata.json"));
    EXPECT_TRUE(meta["results"]["upper_bound_holds"].get<bool>());
}

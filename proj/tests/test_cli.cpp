#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using namespace seneca;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run lab(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("seneca_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write(const fs::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

const std::string data_dir = SENECA_TEST_DATA;

}  // namespace

TEST(CountsFile, HeaderAndSingleColumn) {
    const auto a = cli::parse_counts("label,count\nx,2\ny,5\n", "a.csv");
    EXPECT_EQ(a.counts, SampleCounts({5, 2}));
    EXPECT_EQ(a.labels, (std::vector<std::string>{"y", "x"}));
    const auto b = cli::parse_counts("3\r\n\n1\n", "b.txt");
    EXPECT_EQ(b.counts, SampleCounts({3, 1}));
}

TEST(CountsFile, ErrorsNameLineAndColumn) {
    auto message = [](std::string_view text) {
        try {
            cli::parse_counts(text, "f.csv");
        } catch (const cli::InputError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("label,count\nx,2\ny,abc\n").find("f.csv:3:2"), std::string::npos);
    EXPECT_NE(message("label,count\nx,0\n").find("f.csv:2:2"), std::string::npos);
    EXPECT_NE(message("label,count\nx,2\nx,3\n").find("f.csv:3:1"), std::string::npos);
    EXPECT_NE(message("4\n-2\n").find("f.csv:2:1"), std::string::npos);
    EXPECT_NE(message("a,b,c\n").find("f.csv:1:1"), std::string::npos);
    EXPECT_NE(message("").find("empty population"), std::string::npos);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(cli::format_double(0.1), "0.1");
    EXPECT_EQ(cli::format_double(1.0), "1");
    for (double v : {std::log(2.0), 1e-300, 123456.789, -0.0016552361476502853}) {
        EXPECT_EQ(std::stod(cli::format_double(v)), v);
    }
}

TEST(Estimate, PluginNatsAndBits) {
    const auto in = data_dir + "/two_even.txt";
    auto r = lab({"estimate", "--input", in, "--estimator", "plugin"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "estimator,value,unit,coverage,m_star,upsilon,support,fallback");
    EXPECT_NEAR(std::stod(fields(rows[1])[1]), std::log(2.0), 1e-15);

    r = lab({"estimate", "--input", in, "--estimator", "plugin", "--base", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    rows = lines(r.out);
    EXPECT_EQ(fields(rows[1])[1], "1");
    EXPECT_EQ(fields(rows[1])[2], "bits");
}

TEST(Estimate, SenecaSingleLabel) {
    const auto r = lab({"estimate", "-i", data_dir + "/single.txt", "-e", "seneca"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto f = fields(lines(r.out)[1]);
    EXPECT_EQ(f[0], "seneca");
    EXPECT_EQ(f[1], "0");
    EXPECT_EQ(f[4], "0");
    EXPECT_EQ(f[7], "false");
}

TEST(Estimate, AllEstimatorsCommaAndRepeat) {
    const auto r = lab({"estimate", "-i", data_dir + "/heavy_tail.csv", "-e", "plugin,chao-shen", "-e", "seneca"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out).size(), 4u);
    const auto all = lab({"estimate", "-i", data_dir + "/heavy_tail.csv", "-e", "all"});
    EXPECT_EQ(lines(all.out).size(), 8u);
}

TEST(Estimate, ErrorsAndExitCodes) {
    auto r = lab({"estimate", "-i", data_dir + "/two_even.txt", "-e", "valiant"});
    EXPECT_EQ(r.code, cli::exit_usage);
    EXPECT_NE(r.err.find("chao-wang-jost"), std::string::npos);

    const auto dir = scratch("estimate_errors");
    r = lab({"estimate", "-i", write(dir / "bad.csv", "label,count\nx,1\ny,z\n").string(), "-e", "plugin"});
    EXPECT_EQ(r.code, cli::exit_input);
    EXPECT_NE(r.err.find(":3:2"), std::string::npos);

    r = lab({"estimate", "-i", (dir / "missing.csv").string(), "-e", "plugin"});
    EXPECT_EQ(r.code, cli::exit_input);

    r = lab({"estimate", "-i", write(dir / "one.txt", "1\n").string(), "-e", "james-stein"});
    EXPECT_EQ(r.code, cli::exit_input);

    r = lab({"estimate", "-i", data_dir + "/two_even.txt", "-e", "plugin", "--base", "1"});
    EXPECT_EQ(r.code, cli::exit_usage);

    EXPECT_EQ(lab({"frobnicate"}).code, cli::exit_usage);
    EXPECT_EQ(lab({}).code, cli::exit_usage);
}

namespace {

const char* small_grid = R"({
  "families": ["uniform", {"family": "zipf", "alpha": 1}, "dirichlet-0.5", "step"],
  "support_sizes": [3, 4, 20],
  "n": 10,
  "trials": 30,
  "estimators": ["plugin", "chao-shen", "seneca"],
  "master_seed": 99,
  "bootstrap_reps": 40
})";

}  // namespace

TEST(Simulate, DeterministicAcrossThreadsWithManifest) {
    const auto dir = scratch("simulate");
    const auto cfg = write(dir / "grid.json", small_grid);
    const auto a = dir / "a", b = dir / "b";
    auto r = lab({"simulate", "--config", cfg.string(), "--out", a.string(), "--threads", "1", "--residuals",
                  "--per-trial"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = lab({"simulate", "--config", cfg.string(), "--out", b.string(), "--threads", "8", "--residuals",
             "--per-trial"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (auto name : {"summaries.csv", "regimes.csv", "errors.csv", "trials.csv", "residuals.csv"}) {
        ASSERT_TRUE(fs::exists(a / name)) << name;
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
    }

    const auto rows = lines(slurp(a / "summaries.csv"));
    EXPECT_EQ(rows[0], "family,params,support_size,n,estimator,regime,support_risky,trials,rmse,bias,variance,"
                       "ci_low,ci_high,seed");
    // 4 families x 3 supports x 3 estimators, minus the odd step support
    EXPECT_EQ(rows.size(), 1u + 11u * 3u);
    EXPECT_EQ(fields(rows[1]).back(), "99");
    EXPECT_NE(slurp(a / "errors.csv").find("step"), std::string::npos);

    const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
    EXPECT_EQ(manifest["master_seed"], 99u);
    EXPECT_EQ(manifest["version"], "0.1.0");
    ASSERT_EQ(manifest["outputs"].size(), 5u);
    for (const auto& o : manifest["outputs"]) {
        EXPECT_EQ(o["sha256"], cli::sha256_hex(a / o["file"].get<std::string>()));
    }
}

TEST(Simulate, SeedAndTrialOverrides) {
    const auto dir = scratch("simulate_overrides");
    const auto cfg = write(dir / "grid.json", small_grid);
    auto r = lab({"simulate", "--config", cfg.string(), "--out", (dir / "o").string(), "--seed", "5", "--trials",
                  "3", "--threads", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto f = fields(lines(slurp(dir / "o" / "summaries.csv"))[1]);
    EXPECT_EQ(f[7], "3");
    EXPECT_EQ(f[13], "5");
}

TEST(Simulate, InvalidConfigFailsBeforeRunning) {
    const auto dir = scratch("simulate_invalid");
    const auto out = dir / "out";
    auto r = lab({"simulate", "--config", write(dir / "a.json", R"({"families":["uniform"],"support_sizes":[4],)"
                                                                 R"("estimators":["plugin"],"trials":0})")
                                                .string(),
                  "--out", out.string()});
    EXPECT_EQ(r.code, cli::exit_usage);
    EXPECT_FALSE(fs::exists(out));

    r = lab({"simulate", "--config", write(dir / "b.json", R"({"famlies":["uniform"]})").string(), "--out",
             out.string()});
    EXPECT_EQ(r.code, cli::exit_usage);
    EXPECT_NE(r.err.find("famlies"), std::string::npos);

    r = lab({"simulate", "--config", write(dir / "c.json", "{not json").string(), "--out", out.string()});
    EXPECT_EQ(r.code, cli::exit_usage);

    r = lab({"simulate", "--preset", "table9", "--out", out.string()});
    EXPECT_EQ(r.code, cli::exit_usage);

    r = lab({"simulate", "--out", out.string()});
    EXPECT_EQ(r.code, cli::exit_usage);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Simulate, ThreadsEnvironmentVariable) {
    const auto dir = scratch("simulate_env");
    const auto cfg = write(dir / "grid.json", small_grid);
    setenv("SENECA_LAB_THREADS", "zero", 1);
    auto r = lab({"simulate", "--config", cfg.string(), "--out", (dir / "o").string(), "--trials", "2"});
    EXPECT_EQ(r.code, cli::exit_usage);
    // the flag wins over the variable
    r = lab({"simulate", "--config", cfg.string(), "--out", (dir / "o").string(), "--trials", "2", "--threads",
             "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    setenv("SENECA_LAB_THREADS", "3", 1);
    r = lab({"simulate", "--config", cfg.string(), "--out", (dir / "p").string(), "--trials", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    unsetenv("SENECA_LAB_THREADS");
}

TEST(Presets, Grids) {
    const auto t1 = cli::preset("table1");
    EXPECT_EQ(t1.families.size(), 8u);
    EXPECT_EQ(t1.support_sizes, (std::vector<std::size_t>{2, 4, 6, 8, 10, 20, 30, 40, 50}));
    EXPECT_EQ(t1.n, 10);
    EXPECT_EQ(t1.trials, 1000);
    EXPECT_EQ(t1.estimators.size(), 7u);
    const auto t2 = cli::preset("table2");
    EXPECT_EQ(t2.n, 20);
    EXPECT_EQ(t2.support_sizes, (std::vector<std::size_t>{4, 8, 12, 16, 20, 40, 60, 80, 100}));
    EXPECT_THROW(cli::preset("x"), cli::UsageError);
}

TEST(Biodiv, BallotsAndDoubledTotals) {
    const auto dir = scratch("biodiv");
    const auto pop = write(dir / "pop.csv", "label,count\na,12\nb,7\nc,3\nd,1\ne,1\n");
    auto r = lab({"biodiv", "-p", pop.string(), "--sizes", "10,20", "--trials", "50", "--out", (dir / "one").string(),
                  "--bootstrap-reps", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto one = lines(slurp(dir / "one" / "ballots.csv"));
    EXPECT_EQ(one.size(), 1u + 2u * 7u);
    const auto j1 = nlohmann::json::parse(slurp(dir / "one" / "borda.json"));
    EXPECT_EQ(j1["ballots"], 2);

    r = lab({"biodiv", "-p", pop.string(), "-p", pop.string(), "--sizes", "10,20", "--trials", "50", "--out",
             (dir / "two").string(), "--bootstrap-reps", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(slurp(dir / "two" / "summaries.csv"));
    ASSERT_EQ(rows.size(), 1u + 2u * 14u);
    for (std::size_t i = 1; i <= 14; ++i) {
        auto a = fields(rows[i]);
        auto b = fields(rows[i + 14]);
        EXPECT_EQ(a[0], "pop");
        EXPECT_EQ(b[0], "pop-2");
        a.erase(a.begin());
        b.erase(b.begin());
        EXPECT_EQ(a, b);
    }
    const auto j2 = nlohmann::json::parse(slurp(dir / "two" / "borda.json"));
    for (std::size_t i = 0; i < j1["scores"].size(); ++i) {
        EXPECT_EQ(j2["scores"][i]["points"].get<double>(), 2.0 * j1["scores"][i]["points"].get<double>());
        EXPECT_LE(j2["scores"][i]["ci_low"].get<double>(), j2["scores"][i]["ci_high"].get<double>());
    }
    EXPECT_TRUE(fs::exists(dir / "two" / "manifest.json"));
}

TEST(Biodiv, HeavyTailFixtureRanksSenecaAbovePlugin) {
    const auto dir = scratch("biodiv_heavy");
    const auto r = lab({"biodiv", "-p", data_dir + "/heavy_tail.csv", "--sizes", "10", "--trials", "1000", "--seed",
                        "1", "--out", dir.string(), "--bootstrap-reps", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(dir / "borda.json"));
    double seneca = -1, plugin = -1;
    for (const auto& s : j["scores"]) {
        if (s["estimator"] == "seneca") seneca = s["points"];
        if (s["estimator"] == "plugin") plugin = s["points"];
    }
    EXPECT_GE(seneca, plugin);
}

TEST(Biodiv, InputErrors) {
    const auto dir = scratch("biodiv_errors");
    auto r = lab({"biodiv", "-p", write(dir / "empty.csv", "label,count\n").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, cli::exit_input);
    EXPECT_NE(r.err.find("empty population"), std::string::npos);
    r = lab({"biodiv", "-p", data_dir + "/single.txt", "--sizes", "1", "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, cli::exit_usage);
}

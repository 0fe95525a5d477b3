#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fconc/cli.hpp"
#include "fconc/report_io.hpp"

namespace fconc {
namespace {

struct Ran {
    int code;
    std::string out;
    std::string err;
};

Ran run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "fconc");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

OutputRecord random_record(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> d(1, 1999);
    const std::string_view all[] = {flag::paper_row_inconsistent, flag::infimum_zero,
                                    flag::infimum_half, flag::limit_below_grid,
                                    flag::argmin_at_cap};
    OutputRecord r;
    r.kappa = round15(std::exp(6.0 * u(rng) - 3.0));
    r.inf_value = round15(u(rng));
    r.d1 = d(rng);
    r.d2 = d(rng) + 2;
    r.limit_min = round15(std::pow(u(rng), 40.0));
    r.limit_argmin_a = round15(0.5 + 1e4 * u(rng));
    for (const auto f : all) {
        if (u(rng) < 0.3) r.flags.emplace_back(f);
    }
    return r;
}

TEST(Round15, Idempotent) {
    EXPECT_EQ(round15(0.1 + 0.2), 0.3);
    EXPECT_EQ(round15(round15(1.0 / 3.0)), round15(1.0 / 3.0));
    EXPECT_EQ(format15(0.5), "0.5");
}

TEST(RecordsProperty, CsvAndJsonRoundTrip) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<OutputRecord> recs;
        const int n = static_cast<int>(rng() % 20);
        for (int i = 0; i < n; ++i) recs.push_back(random_record(rng));

        std::ostringstream csv;
        write_csv(csv, recs);
        std::istringstream in(csv.str());
        EXPECT_EQ(read_csv(in), recs);

        EXPECT_EQ(records_from_json(to_json(recs)), recs);
    }
}

TEST(Records, CsvLayout) {
    OutputRecord r;
    r.kappa = 1.5;
    r.inf_value = 0.776953623595397;
    r.d1 = 2;
    r.d2 = 1999;
    r.limit_min = 0.77686983985157;
    r.limit_argmin_a = 1.0;
    r.flags = {std::string(flag::limit_below_grid), std::string(flag::argmin_at_cap)};
    std::ostringstream os;
    write_csv(os, std::vector{r});
    EXPECT_EQ(os.str(), std::string(kCsvHeader) +
                            "\n1.5,0.776953623595397,2,1999,0.77686983985157,1,"
                            "limit-curve-below-grid;argmin-at-grid-cap\n");
}

TEST(Records, MalformedInputRejected) {
    std::istringstream bad_header("kappa,inf\n");
    EXPECT_THROW(read_csv(bad_header), std::runtime_error);
    std::istringstream bad_flag(std::string(kCsvHeader) + "\n1,0.5,1,3,0.5,1,not-a-flag\n");
    EXPECT_THROW(read_csv(bad_flag), std::runtime_error);
    std::istringstream short_row(std::string(kCsvHeader) + "\n1,0.5,1\n");
    EXPECT_THROW(read_csv(short_row), std::runtime_error);
    EXPECT_THROW(records_from_json("{\"x\": 1}"), std::exception);
}

TEST(ReadConfig, AppliesKeysOverBase) {
    std::istringstream in("# numerical knobs\ncf_max_iter = 800\n\nd1_max=50\nworkers = 2\n"
                          "quad_tolerance = 1e-11\n");
    const FileConfig fc = read_config(in);
    EXPECT_EQ(fc.eval.cf_max_iter, 800);
    EXPECT_EQ(fc.eval.quad_tolerance, 1e-11);
    EXPECT_EQ(fc.grid.d1_max, 50);
    EXPECT_EQ(fc.grid.d2_max, 1999);
    EXPECT_EQ(fc.grid.workers, 2u);
}

TEST(ReadConfig, RejectsUnknownKeyAndBadValue) {
    std::istringstream unknown("colour = blue\n");
    EXPECT_THROW(read_config(unknown), std::runtime_error);
    std::istringstream bad("cf_max_iter = lots\n");
    EXPECT_THROW(read_config(bad), std::runtime_error);
}

TEST(Cli, ProbText) {
    const Ran r = run_cli({"prob", "--d1", "1", "--d2", "3", "--kappa", "16"});
    EXPECT_EQ(r.code, cli::kSuccess);
    EXPECT_NE(r.out.find("probability 0.99383462686116"), std::string::npos) << r.out;
}

TEST(Cli, ProbJson) {
    const Ran r = run_cli({"--format", "json", "prob", "--d1", "2", "--d2", "1999", "--kappa", "1.5"});
    ASSERT_EQ(r.code, cli::kSuccess);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j.at("probability").get<double>(), 0.776953623595397, 1e-12);
    EXPECT_EQ(j.at("d2").get<int>(), 1999);
}

TEST(Cli, UsageErrors) {
    const Ran d2 = run_cli({"prob", "--d1", "1", "--d2", "2", "--kappa", "1"});
    EXPECT_EQ(d2.code, cli::kUsage);
    EXPECT_NE(d2.err.find("mean"), std::string::npos);
    EXPECT_EQ(run_cli({"sweep", "--kappa-from", "0.5", "--kappa-to", "0.9", "--steps", "1"}).code,
              cli::kUsage);
    EXPECT_EQ(run_cli({"bogus"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"inf"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"--format", "xml", "prob", "--d1", "1", "--d2", "3", "--kappa", "1"}).code,
              cli::kUsage);
    EXPECT_EQ(run_cli({"--d2-max", "2", "inf", "--kappa", "1"}).code, cli::kUsage);
}

TEST(Cli, ConvergenceFailureExitCode) {
    const auto path = std::filesystem::temp_directory_path() / "fconc_cli_test.cfg";
    {
        std::ofstream f(path);
        f << "cf_max_iter = 100\n";
    }
    const Ran r = run_cli({"--config", path.string(), "inf", "--kappa", "1"});
    EXPECT_EQ(r.code, cli::kConvergence) << r.err;
    EXPECT_NE(r.err.find("d1="), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, SweepIsNondecreasingCsv) {
    const Ran r = run_cli({"--d1-max", "40", "--d2-max", "60", "sweep", "--kappa-from", "0.5",
                           "--kappa-to", "0.9", "--steps", "5", "--a-max", "20", "--a-tail", "20"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    std::istringstream in(r.out);
    const auto recs = read_csv(in);
    ASSERT_EQ(recs.size(), 5u);
    EXPECT_EQ(recs.front().kappa, 0.5);
    EXPECT_EQ(recs.back().kappa, 0.9);
    for (std::size_t i = 1; i < recs.size(); ++i) {
        EXPECT_LE(recs[i - 1].inf_value, recs[i].inf_value);
    }
    for (const auto& rec : recs) {
        EXPECT_NE(std::find(rec.flags.begin(), rec.flags.end(), flag::infimum_zero),
                  rec.flags.end());
    }
}

TEST(Cli, InfReportsMarginAboveHalf) {
    const Ran r = run_cli({"--d1-max", "30", "--d2-max", "30", "inf", "--kappa", "1.5", "--a-max",
                           "10", "--a-tail", "10"});
    EXPECT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_NE(r.out.find("margin above 1/2"), std::string::npos);
}

TEST(Cli, OutWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "fconc_cli_out.json";
    const Ran r = run_cli({"--format", "json", "--out", path.string(), "--d1-max", "10",
                           "--d2-max", "10", "inf", "--kappa", "0.8", "--a-max", "5", "--a-tail",
                           "5"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    const auto recs = records_from_json(buf.str());
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].kappa, 0.8);
    std::filesystem::remove(path);
}

TEST(Cli, VerifyQuickPasses) {
    const Ran r = run_cli({"verify", "--profile", "quick"});
    EXPECT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_NE(r.out.find("overall PASS"), std::string::npos);
    const Ran bad = run_cli({"verify", "--profile", "quick", "--tolerance", "1e-20"});
    EXPECT_EQ(bad.code, cli::kCheckFailed);
    EXPECT_NE(bad.err.find("failed"), std::string::npos);
}

}  // namespace
}  // namespace fconc

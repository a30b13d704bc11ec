#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using igsub::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> v;
  for (auto& l : lines(text))
    if (!l.empty() && l[0] != '#') v.push_back(l);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmp_dir(const std::string& name) {
  const char* base = std::getenv("IGSUB_TEST_TMP");
  fs::path p = fs::path(base ? base : fs::temp_directory_path().string()) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, SimulateInGPaths) {
  const auto r = cli({"simulate", "--kind", "ing", "--alpha", "0.2", "-T", "10",
                      "--paths", "10", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto all = lines(r.out);
  EXPECT_EQ(all[0].rfind("# igsub ", 0), 0u);
  EXPECT_EQ(all[1], "# command: simulate");
  EXPECT_EQ(all[2].rfind("# config: {", 0), 0u);
  EXPECT_EQ(all[3].rfind("# driving_rate: 0.9181", 0), 0u);
  const auto rows = data_lines(r.out);
  EXPECT_EQ(rows[0], "path_id,time,value");
  EXPECT_EQ(rows[1], "0,0,0");
  EXPECT_EQ(rows.back().rfind("9,10,", 0), 0u);
}

TEST(Cli, SimulateProcessOnGrid) {
  const auto r = cli({"simulate", "--kind", "pting", "--alpha", "0.5", "--theta", "1",
                      "--lambda", "2", "-T", "5", "--steps", "50", "--paths", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_lines(r.out).size(), 1u + 3u * 51u);
}

TEST(Cli, SimulateJson) {
  const auto r = cli({"simulate", "--kind", "ting", "--alpha", "0.5", "--theta", "1",
                      "--paths", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "simulate");
  EXPECT_EQ(j["paths"].size(), 2u);
  EXPECT_EQ(j["config"]["theta"], 1.0);
}

TEST(Cli, FlagErrorsNameTheFlag) {
  auto r = cli({"simulate", "--kind", "ting", "--alpha", "0.5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--theta is required for --kind ting"), std::string::npos);
  r = cli({"simulate", "--kind", "ting", "--theta", "1", "--method", "inverse"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--method inverse is not available for --kind ting"),
            std::string::npos);
  r = cli({"pmf", "--kind", "ing"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--kind"), std::string::npos);
  r = cli({"pmf", "--kind", "ping"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--lambda is required"), std::string::npos);
  r = cli({"simulate", "--no-such-flag"});
  EXPECT_EQ(r.code, 1);
  r = cli({});
  EXPECT_EQ(r.code, 1);
  r = cli({"ruin", "--kind", "ping", "--lambda", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ruin requires --kind pting"), std::string::npos);
}

TEST(Cli, DomainErrorsExitWithTwo) {
  const auto r = cli({"moments", "--kind", "ing", "--alpha", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("infinite mean"), std::string::npos);
  EXPECT_EQ(cli({"simulate", "--alpha", "1.5"}).code, 2);
}

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"--version"}).code, 0);
}

TEST(Cli, PdfTable) {
  auto r = cli({"pdf-table", "--kind", "ting", "--alpha", "0.5", "--theta", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = data_lines(r.out);
  EXPECT_EQ(rows[0], "z,pdf");
  EXPECT_EQ(rows.size(), 401u);
  r = cli({"pdf-table", "--kind", "ing", "--z-min", "0.5", "--z-max", "3", "--points", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(data_lines(r.out).size(), 1u + 4u);
  r = cli({"pdf-table", "--kind", "ing", "--mode", "likelihood", "--z", "3", "--points", "99"});
  ASSERT_EQ(r.code, 0);
  rows = data_lines(r.out);
  EXPECT_EQ(rows[0], "alpha,likelihood");
  EXPECT_EQ(rows.size(), 100u);
  EXPECT_EQ(rows[1].rfind("0.01,", 0), 0u);
  r = cli({"pdf-table", "--kind", "ing", "--mode", "likelihood", "--z", "0.5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(data_lines(r.out).size(), 1u);
  EXPECT_EQ(cli({"pdf-table", "--mode", "likelihood"}).code, 1);
}

TEST(Cli, PmfRows) {
  const auto r = cli({"pmf", "--kind", "pting", "--alpha", "0.5", "--theta", "1",
                      "--lambda", "1", "-t", "1", "-k", "0..5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_lines(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "k,probability");
  EXPECT_EQ(rows[1].rfind("0,0.90567", 0), 0u);
  EXPECT_EQ(cli({"pmf", "--kind", "pting", "--theta", "1", "--lambda", "1", "-k", "5..2"}).code,
            1);
}

TEST(Cli, MomentsWithFractionalOrder) {
  const auto r = cli({"moments", "--kind", "pting", "--alpha", "0.5", "--theta", "1",
                      "--lambda", "1", "--q", "0.25", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["mean"].get<double>(), 0.18393972058572116, 1e-14);
  EXPECT_NEAR(j["fractional_moment"]["value"].get<double>(), 0.10827279861020958, 1e-9);
}

TEST(Cli, RuinReport) {
  const auto r = cli({"ruin", "--kind", "pting", "--alpha", "0.5", "--theta", "1",
                      "--lambda", "1", "--u", "0", "--y", "1", "--claims", "exp:1",
                      "--c", "1", "--paths", "500", "--horizon", "50", "--residual"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto out = r.out;
  EXPECT_NE(out.find("G_analytic,0.06263"), std::string::npos);
  EXPECT_NE(out.find("psi_analytic,0.09907"), std::string::npos);
  EXPECT_NE(out.find("premium_loading,4.4365"), std::string::npos);
  EXPECT_NE(out.find("ide_residual,"), std::string::npos);
  const auto list = cli({"ruin", "--kind", "pting", "--theta", "1", "--lambda", "1",
                         "--claims", "list:0.5,1.5", "--paths", "200", "--horizon", "20"});
  EXPECT_EQ(list.code, 0) << list.err;
  EXPECT_EQ(cli({"ruin", "--kind", "pting", "--theta", "1", "--lambda", "1",
                 "--claims", "gamma:2"}).code,
            1);
}

TEST(Cli, ConfigRoundTripIsByteIdentical) {
  const auto dir = tmp_dir("roundtrip");
  const auto cfg = (dir / "cfg.json").string();
  const auto first = cli({"simulate", "--kind", "ting", "--alpha", "0.4", "--theta", "2",
                          "-T", "20", "--paths", "4", "--seed", "11", "--save-config", cfg});
  ASSERT_EQ(first.code, 0) << first.err;
  const auto second = cli({"simulate", "--config", cfg});
  ASSERT_EQ(second.code, 0) << second.err;
  EXPECT_EQ(first.out, second.out);
  // Flags override the file.
  const auto third = cli({"simulate", "--config", cfg, "--seed", "12"});
  EXPECT_NE(third.out, first.out);
  EXPECT_NE(third.out.find("\"seed\":12"), std::string::npos);
  EXPECT_EQ(cli({"simulate", "--config", (dir / "missing.json").string()}).code, 1);
}

TEST(Cli, JsonConfigParsesBack) {
  igsub::cli::RunConfig c;
  c.command = "pmf";
  c.kind = "pting";
  c.theta = 0.7;
  c.lambda = 2.0;
  c.seed = 99;
  const auto back = igsub::cli::from_json_text(igsub::cli::to_json_text(c));
  EXPECT_EQ(igsub::cli::to_json_text(back), igsub::cli::to_json_text(c));
  EXPECT_EQ(*back.theta, 0.7);
  EXPECT_FALSE(back.eps.has_value());
}

TEST(Cli, OutputDirectoryEnvironment) {
  const auto dir = tmp_dir("outdir");
  ASSERT_EQ(setenv("IGSUB_OUTPUT_DIR", dir.c_str(), 1), 0);
  const auto r = cli({"pmf", "--kind", "pting", "--theta", "1", "--lambda", "1",
                      "--output", "pmf.csv"});
  unsetenv("IGSUB_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto text = slurp(dir / "pmf.csv");
  EXPECT_NE(text.find("k,probability"), std::string::npos);
}

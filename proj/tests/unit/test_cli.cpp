#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "rbci/oracle.hpp"
#include "rbci/simulation.hpp"
#include "rbci/trial_io.hpp"

using namespace rbci;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rbci_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    example_ = (dir_ / "example1.csv").string();
    std::ofstream f(example_);
    f << "z,y\n";
    const auto z = example1_assignment();
    const auto y = dgp_example1().observe(z);
    for (std::size_t i = 0; i < z.size(); ++i) f << int(z[i]) << ',' << format_number(y[i]) << '\n';
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::string example_;
};

TEST_F(CliTest, CiExampleLowerBound) {
  const auto r = run({"ci", example_, "--alternative", "greater", "--mode", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["lower"], 0.61);
  EXPECT_EQ(j["upper"], "+inf");
  EXPECT_EQ(j["n_assignments"], 70);
  EXPECT_EQ(j["statistic"], "t");
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_FALSE(j.contains("generator"));
}

TEST_F(CliTest, CiIsReproducible) {
  const std::vector<std::string> args{"ci", example_, "--mode", "mc", "--n-fisher", "500", "--seed", "9"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["generator"], "mt19937_64");
}

TEST_F(CliTest, ExtremeAlphaEitherSucceedsOrReportsEmpty) {
  for (const char* alpha : {"0.999", "0.9999999"}) {
    const auto r = run({"ci", example_, "--alpha", alpha});
    EXPECT_TRUE(r.code == 0 || r.code == 3) << r.code << r.err;
  }
}

TEST_F(CliTest, PfunctionRowsMatchOracle) {
  const auto r = run({"pfunction", example_, "--side", "greater", "--mode", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,p,kind");
  const auto z = example1_assignment();
  const auto y = dgp_example1().observe(z);
  const ReferenceSet space = enumerate_cre(8, 4);
  std::size_t rows = 0;
  bool saw_061 = false;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string theta_s, p_s, kind;
    std::getline(fields, theta_s, ',');
    std::getline(fields, p_s, ',');
    std::getline(fields, kind);
    const double theta = std::stod(theta_s), p = std::stod(p_s);
    EXPECT_TRUE(kind == "base" || kind == "jump") << kind;
    if (kind == "jump") {
      // the row reports the value on the interval to the right of the jump
      const double right = theta + 1e-7;
      EXPECT_NEAR(p, oracle::oracle_p(z, y, space, Statistic::StudentizedT, right, Side::Greater).value(), 1e-10)
          << line;
      saw_061 = saw_061 || std::abs(theta - 0.61) < 0.005;
    }
  }
  EXPECT_GT(rows, 10u);
  EXPECT_TRUE(saw_061);
}

TEST_F(CliTest, SingleDrawGivesFlatFunction) {
  const auto r = run({"pfunction", example_, "--mode", "mc", "--n-fisher", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_NE(row.find(",1,base"), std::string::npos) << row;
}

TEST_F(CliTest, InvalidInvocations) {
  EXPECT_EQ(run({"ci", (dir_ / "missing.csv").string()}).code, 2);
  EXPECT_EQ(run({"ci", example_, "--alpha", "1.5"}).code, 2);
  EXPECT_EQ(run({"ci", example_, "--stat", "median"}).code, 2);
  EXPECT_EQ(run({"ci", example_, "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  std::ofstream(dir_ / "bad.csv") << "z,y\n1,1\n0,oops\n";
  const auto bad = run({"ci", (dir_ / "bad.csv").string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
}

TEST_F(CliTest, HelpExitsCleanly) {
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, SimulateWritesJsonAndCsv) {
  const std::string csv = (dir_ / "table.csv").string();
  const auto r = run({"simulate", "--n", "20", "--n-fisher", "100", "--n-rep", "4", "--seed", "1", "--threads",
                      "1", "--out", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n_rep"], 4);
  std::ifstream f(csv);
  std::string header, row;
  std::getline(f, header);
  std::getline(f, row);
  EXPECT_EQ(header, table_csv_header());
  EXPECT_EQ(row.rfind("20,100,", 0), 0u) << row;
}

TEST_F(CliTest, SimulateExampleSweep) {
  const auto r = run({"simulate", "--dgp", "example1-exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n_rep"], 70);
  EXPECT_NEAR(j["type1_error"].get<double>(), 2.0 / 70.0, 1e-9);
}

}  // namespace

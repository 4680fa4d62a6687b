#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = valvol::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("valvol_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

const char* kToric = "[variety]\nkind = projective\nn = 1\n[divisor]\nX0 ; -1\nX1 ; 0\n[experiment]\nm = 1..3\n";

}  // namespace

TEST(Cli, VerifyMainCsvAndJson) {
  const std::string cfg = write_temp("toric.cfg", kToric);
  CliResult r = run({"verify-main", "--config", cfg});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2,3,3,3,1/2,1/2,1/2,0,exact\r\n"), std::string::npos);
  r = run({"verify-main", "--config", cfg, "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 3u);
}

TEST(Cli, OutputFile) {
  const std::string cfg = write_temp("toric2.cfg", kToric);
  const std::string out = (fs::temp_directory_path() / "valvol_cli_out.csv").string();
  CliResult r = run({"verify-main", "--config", cfg, "--out", out});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "m,dim,vol_lo,vol_hi,lhs_lo,lhs_hi,rhs,slack_lo,status\r");
}

TEST(Cli, FailedRowExitsOne) {
  // m = 99 is beyond the supported degree on P^1
  const std::string cfg = write_temp("fail.cfg", std::string(kToric) + "m = 1, 99\n");
  CliResult r = run({"verify-main", "--config", cfg});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("99,,,,,,,,error: degree 99"), std::string::npos) << r.out;
  EXPECT_EQ(run({"verify-main", "--config", cfg, "--tolerance", "-1"}).code, 2);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"verify-main", "--config", "/nonexistent/x.cfg"}).code, 2);
  EXPECT_EQ(run({"verify-main"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify-main", "--format", "xml", "--config", "x"}).code, 2);
  const std::string bad = write_temp("bad.cfg", "[variety]\nn = 1\n[divisor]\nX0 ; 0\nX1 +* ; 0\n");
  CliResult r = run({"dual", "--config", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
}

TEST(Cli, Orthogonalize) {
  const std::string cfg = write_temp("forms.cfg", "[valuation]\nFORMS 2\n1, 0 ; 0\n1, 1 ; 1\nEND\n");
  CliResult r = run({"orthogonalize", "--config", cfg});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find("\r\n")), "index,shift,basis_vector");
  const std::string ker = write_temp("ker.cfg", "[valuation]\nFORMS 2\n1, 0 ; 0\nEND\n");
  r = run({"orthogonalize", "--config", ker});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("kernel vector"), std::string::npos);
}

TEST(Cli, VolumeDualIntersect) {
  const std::string cfg = write_temp("mixed.cfg", std::string(kToric) + "[polys]\nX0*X1\nX0^2 + X1^2\n");
  CliResult r = run({"dual", "--config", cfg});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("X0*X1,1,1,"), std::string::npos);
  r = run({"intersect", "--config", cfg, "--seed", "3", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], "-1");
  EXPECT_EQ(j["seed"], 3);
  r = run({"volume", "--config", cfg});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3,4,6,6,true"), std::string::npos);
  const std::string vol = write_temp("vol.cfg", "[valuation]\nDIAGONAL 2\n1, 0 ; 1\n0, 1 ; 1/2\nEND\n");
  r = run({"volume", "--config", vol});
  EXPECT_EQ(r.out, "volume\r\n3/2\r\n");
}

TEST(Cli, Selftest) {
  CliResult r = run({"selftest", "--seed", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
}

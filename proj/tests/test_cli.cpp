// End-to-end checks of the xidiv executable and its exit-code contract.
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(XIDIV_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kFixtures = XIDIV_FIXTURES;

}  // namespace

TEST_CASE("eval") {
  const Run xi = run("eval xi --s 0.5");
  CHECK(xi.code == 0);
  CHECK(xi.out.rfind("0.497120778188", 0) == 0);

  CHECK(run("eval psi --x -1").code == 2);
  CHECK(run("eval zeta --s 1").code == 2);
  CHECK(run("eval nosuch").code == 2);
  CHECK(run("eval xi --s 0.5 --route sideways").code == 2);
  CHECK(run("eval Psi --u 1000").code == 3);

  const Run xi_zero = run("eval Xi --t 14.134725 --json");
  REQUIRE(xi_zero.code == 0);
  const json j = json::parse(xi_zero.out);
  CHECK(std::abs(j.at("value").at("re").get<double>()) < 1e-6);

  const Run csv = run("eval g_n --n 1 --x 1.5 --csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("function,re,im,error_estimate\n", 0) == 0);
  CHECK(csv.out.find("0.29629629629629628") != std::string::npos);

  CHECK(run("eval J_n --n 2 --lambda 0.81").code == 0);
  CHECK(run("eval phi --s 0 --sigma 0").code == 0);
  CHECK(run("eval phi --s 0.3 --sigma 0").code == 2);
}

TEST_CASE("verify") {
  fs::remove_all("cli_verify_a");
  fs::remove_all("cli_verify_b");
  CHECK(run("verify --all --out cli_verify_a").code == 0);
  CHECK(run("verify --all --out cli_verify_b").code == 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator("cli_verify_a")) {
    ++files;
    CHECK(slurp(entry.path()) == slurp(fs::path("cli_verify_b") / entry.path().filename()));
  }
  CHECK(files == 11);
  const json summary = json::parse(slurp("cli_verify_a/summary.json"));
  CHECK_FALSE(summary.at("any_failed").get<bool>());
  const json s1 = json::parse(slurp("cli_verify_a/S1.json"));
  for (const char* key : {"step_id", "description", "inputs", "lhs", "rhs", "abs_residual",
                          "rel_residual", "verdict", "tolerance_used", "runtime_ms"}) {
    CHECK(s1.contains(key));
  }

  CHECK(run("verify --steps S99 --out cli_verify_x").code == 2);
  CHECK(run("verify --steps S6 --out cli_verify_s6").code == 0);
  CHECK(json::parse(slurp("cli_verify_s6/S6.json")).at("verdict") == "measured_only");

  {
    std::ofstream cfg("negative.cfg");
    cfg << "quad_upper_cut = 1\n";
  }
  CHECK(run("--config negative.cfg verify --steps S3 --out cli_verify_neg").code == 1);
  {
    std::ofstream cfg("broken.cfg");
    cfg << "quad_upper_cut = lots\n";
  }
  CHECK(run("--config broken.cfg verify --steps S1 --out cli_verify_neg").code == 2);

  CHECK(run("verify --steps S1,S2 --out cli_verify_m --manifest").code == 0);
  const json manifest = json::parse(slurp("cli_verify_m/manifest.json"));
  CHECK(manifest.at("outputs").size() == 3);
  CHECK(manifest.contains("started_at"));
}

TEST_CASE("scan") {
  const Run line = run("scan --line 0 30 --step 0.1 --out cli_line.csv");
  REQUIRE(line.code == 0);
  const json zeros = json::parse(line.out);
  CHECK(zeros.at("zeros").size() == 3);
  const std::string csv = slurp("cli_line.csv");
  CHECK(csv.rfind("t,Xi\n", 0) == 0);

  const Run strip = run("scan --strip 0.6 0.9 0 30");
  REQUIRE(strip.code == 0);
  CHECK(json::parse(strip.out).at("min_abs_xi").get<double>() > 0.0);

  CHECK(run("scan --line 30 0").code == 2);
  CHECK(run("scan --strip 0.4 0.9 0 30").code == 2);
  CHECK(run("scan").code == 2);
}

TEST_CASE("idcheck") {
  const Run k = run("idcheck --source kristiansen " + kFixtures + "/uniform3.csv");
  REQUIRE(k.code == 0);
  CHECK(json::parse(k.out).at("cm_report").at("passed").get<bool>());

  const Run phi = run("idcheck --source phi --sigma 0.0");
  REQUIRE(phi.code == 0);
  CHECK(json::parse(phi.out).at("verdict") == "measured_only");

  CHECK(run("idcheck --source kristiansen " + kFixtures + "/negative_weight.csv").code == 2);
  CHECK(run("idcheck --source kristiansen " + kFixtures + "/malformed.csv").code == 2);
  CHECK(run("idcheck --source kristiansen /nonexistent.csv").code == 2);
  CHECK(run("idcheck --source other").code == 2);
}

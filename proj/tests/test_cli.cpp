// End-to-end tests of the command-line tool: exit codes, record format,
// determinism, and agreement with the committed oracle values. Each case
// spawns the real binary (path injected by the build) and captures stdout.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(MOYALHARM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

std::string data_path(const std::string& name) {
  return std::string(MOYALHARM_TEST_DATA_DIR) + "/" + name;
}

std::string write_config(const std::string& name, const std::string& text) {
  std::filesystem::path p =
      std::filesystem::temp_directory_path() / ("moyalharm_" + name + ".json");
  std::ofstream f(p);
  f << text;
  f.close();
  return p.string();
}

std::vector<nlohmann::json> parse_records(const std::string& out) {
  std::vector<nlohmann::json> records;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(nlohmann::json::parse(line));
  }
  return records;
}

}  // namespace

TEST_CASE("adapt: standard pair passes, scaled pair is rejected with exit 1") {
  RunResult ok = run_cli("adapt --config " +
                         write_config("adapt4", R"({"dimension": 4})"));
  CHECK(ok.exit_code == 0);
  auto recs = parse_records(ok.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["adapted"].get<bool>());
  CHECK(recs[0]["residual"].get<double>() < 1e-12);
  CHECK(recs[0]["r"].size() == 4);

  RunResult bad = run_cli(
      "adapt --config " +
      write_config("adapt_bad", R"({"dimension": 2, "sigma": [[0,-2],[2,0]]})"));
  CHECK(bad.exit_code == 1);
  auto bad_recs = parse_records(bad.out);
  REQUIRE(bad_recs.size() == 1);
  CHECK_FALSE(bad_recs[0]["adapted"].get<bool>());
}

TEST_CASE("adapt: adapted-random sigma token round-trips") {
  RunResult r = run_cli(
      "adapt --config " +
      write_config("adapt_rand",
                   R"({"dimension": 4, "metric": [[2,0.3,0,0],[0.3,1,0,0],[0,0,1.5,0],[0,0,0,1]], "sigma": "adapted-random:42"})"));
  CHECK(r.exit_code == 0);
  auto recs = parse_records(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["adapted"].get<bool>());
  CHECK(recs[0]["residual"].get<double>() < 1e-9);
}

TEST_CASE("invalid inputs exit with code 2") {
  RunResult bad_metric = run_cli(
      "adapt --config " +
      write_config("badmetric", R"({"dimension": 2, "metric": [[1,0],[0,-1]]})"));
  CHECK(bad_metric.exit_code == 2);

  RunResult not_json =
      run_cli("adapt --config " + write_config("notjson", "{dimension"));
  CHECK(not_json.exit_code == 2);

  RunResult missing = run_cli("amplitude");
  CHECK(missing.exit_code == 2);  // no graph configured
}

TEST_CASE("verify star emits one passing record per check") {
  RunResult r = run_cli("verify star");
  CHECK(r.exit_code == 0);
  auto recs = parse_records(r.out);
  REQUIRE(recs.size() > 5);
  for (const auto& rec : recs) {
    CHECK(rec.contains("check"));
    CHECK(rec.contains("params"));
    CHECK(rec.contains("residual"));
    CHECK(rec.contains("tolerance"));
    CHECK(rec["pass"].get<bool>());
    CHECK(rec["residual"].get<double>() < rec["tolerance"].get<double>());
  }
}

TEST_CASE("verify covariance on an anisotropic metric passes tightly") {
  std::string cfg =
      write_config("cov", R"({"dimension": 2, "metric": [[4,0],[0,1]]})");
  RunResult r = run_cli("verify covariance --config " + cfg + " --graph " +
                        data_path("planar_tadpole.json"));
  CHECK(r.exit_code == 0);
  auto recs = parse_records(r.out);
  REQUIRE(recs.size() == 2);
  for (const auto& rec : recs) CHECK(rec["residual"].get<double>() < 1e-6);
}

TEST_CASE("verify all refuses a non-adapted sigma with exit 2") {
  std::string cfg = write_config(
      "nonadapted",
      R"({"dimension": 2, "sigma": [[0,-2],[2,0]], "graph": ")" +
          data_path("planar_tadpole.json") + R"("})");
  RunResult r = run_cli("verify all --config " + cfg);
  CHECK(r.exit_code == 2);
}

TEST_CASE("amplitude reproduces the committed oracle configuration") {
  std::ifstream f(data_path("amplitude_oracle.json"));
  REQUIRE(f.good());
  nlohmann::json oracle = nlohmann::json::parse(f);
  const auto& cfg = oracle["configs"][0];
  REQUIRE(cfg["graph"] == "planar");

  nlohmann::json run{{"dimension", 2},
                     {"theta", cfg["theta"]},
                     {"omega", cfg["omega"]},
                     {"mass2", cfg["mass2"]},
                     {"epsilon", cfg["epsilon"]},
                     {"tolerance", 1e-9},
                     {"graph", data_path("planar_tadpole.json")},
                     {"externals", cfg["externals"]}};
  RunResult r =
      run_cli("amplitude --config " + write_config("amp_oracle", run.dump()));
  CHECK(r.exit_code == 0);
  auto recs = parse_records(r.out);
  REQUIRE(recs.size() == 1);
  double re = recs[0]["value_re"].get<double>();
  double im = recs[0]["value_im"].get<double>();
  double ore = cfg["value_re"].get<double>();
  double oim = cfg["value_im"].get<double>();
  CHECK(std::hypot(re - ore, im - oim) / std::hypot(ore, oim) < 1e-5);
  CHECK(recs[0]["det_g_factor"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("identical config gives byte-identical stdout") {
  std::string cfg = write_config(
      "determinism",
      R"({"dimension": 2, "graph": ")" + data_path("planar_tadpole.json") +
          R"(", "externals": [[0.3,0.0],[-0.1,0.2]]})");
  RunResult a = run_cli("amplitude --config " + cfg);
  RunResult b = run_cli("amplitude --config " + cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("alpha scan writes the advertised CSV table") {
  std::string scan =
      (std::filesystem::temp_directory_path() / "moyalharm_scan.csv").string();
  std::string cfg = write_config(
      "scan", R"({"dimension": 2, "graph": ")" + data_path("planar_tadpole.json") +
                  R"(", "externals": [[0.3,0.0],[-0.1,0.2]]})");
  RunResult r = run_cli("amplitude --config " + cfg + " --alpha-scan 7 --scan-out " +
                        scan);
  CHECK(r.exit_code == 0);
  std::ifstream f(scan);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "alpha_1,re,im");
  int rows = 0;
  double first_re = 0.0;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (rows == 0) {
      std::istringstream ls(line);
      std::string cell;
      std::getline(ls, cell, ',');  // alpha_1
      CHECK(std::stod(cell) == doctest::Approx(0.2));
      std::getline(ls, cell, ',');
      first_re = std::stod(cell);
    }
    ++rows;
  }
  CHECK(rows == 7);
  CHECK(std::isfinite(first_re));
  CHECK(first_re != 0.0);
}

TEST_CASE("flags override the config file") {
  // config says theta=2; the flag forces theta=1, which must reproduce the
  // run whose config already says theta=1, bit for bit.
  std::string base = R"({"dimension": 2, "graph": ")" +
                     data_path("planar_tadpole.json") +
                     R"(", "externals": [[0.3,0.0],[-0.1,0.2]], "theta": )";
  std::string cfg2 = write_config("theta2", base + "2.0}");
  std::string cfg1 = write_config("theta1", base + "1.0}");
  RunResult overridden = run_cli("amplitude --config " + cfg2 + " --theta 1.0");
  RunResult direct = run_cli("amplitude --config " + cfg1);
  RunResult untouched = run_cli("amplitude --config " + cfg2);
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.out == direct.out);
  CHECK(untouched.out != direct.out);
}

TEST_CASE("unreachable tolerance fails with exit 3") {
  std::string cfg = write_config(
      "tol", R"({"dimension": 2, "graph": ")" + data_path("planar_tadpole.json") +
                 R"(", "externals": [[0.3,0.0],[-0.1,0.2]]})");
  RunResult r = run_cli("amplitude --config " + cfg + " --tol 1e-30");
  CHECK(r.exit_code == 3);
}

TEST_CASE("propagator and action commands report finite values") {
  RunResult p = run_cli("propagator --config " +
                        write_config("prop", R"({"externals": [[0.3,0.0],[0.0,0.0]]})"));
  CHECK(p.exit_code == 0);
  auto precs = parse_records(p.out);
  REQUIRE(precs.size() == 1);
  CHECK(precs[0]["value"].get<double>() > 0.0);
  CHECK(precs[0]["abs_error"].get<double>() < 1e-7);

  // defaults: theta=1, omega=1/2, m^2=1, lambda=1, phi = exp(-x^2), D=2;
  // the four terms sum to pi/2 + pi/8 + pi/4 + pi/8 = pi.
  RunResult a = run_cli("action");
  CHECK(a.exit_code == 0);
  auto arecs = parse_records(a.out);
  REQUIRE(arecs.size() == 1);
  CHECK(arecs[0]["total"].get<double>() ==
        doctest::Approx(3.14159265358979).epsilon(1e-12));
}

TEST_CASE("sample config parses and runs") {
  RunResult r =
      run_cli("adapt --config " + data_path("sample_config.json"));
  CHECK(r.exit_code == 0);
  auto recs = parse_records(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["adapted"].get<bool>());
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "tldp/harness.hpp"

using namespace tldp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tldp_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run writes CSVs") {
  const auto dir = scratch("run");
  const auto base = (dir / "exp").string();
  const auto r = run_cli({"run", "--scenario", "s1c1", "--n-q", "300", "--n-p", "600",
                          "--reps", "3", "--threads", "1", "--out", base});
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(base + ".summary.csv"));
  CHECK(fs::exists(base + ".curve.csv"));
  CHECK(fs::exists(base + ".reps.csv"));
  const auto rows = read_summary_csv(base + ".summary.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_q == 300);
  CHECK(rows[0].n_p == 600);
  CHECK(rows[0].replications == 3);
}

TEST_CASE("config file with flag override") {
  const auto dir = scratch("config");
  const auto cfg = dir / "exp.cfg";
  std::ofstream(cfg) << "scenario = s2c1\nn_q = 200\nreps = 2\npolicy = target_only\n";
  const auto base = (dir / "cfg").string();
  const auto r = run_cli({"run", "--config", cfg.string(), "--n-q", "250", "--out", base});
  CHECK(r.code == kExitOk);
  const auto rows = read_summary_csv(base + ".summary.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].scenario == "s2c1");
  CHECK(rows[0].policy == "target_only");
  CHECK(rows[0].n_q == 250);
  CHECK(rows[0].n_p == 0);
}

TEST_CASE("sweep and plot") {
  const auto dir = scratch("sweep");
  const auto base = (dir / "gamma").string();
  const auto r = run_cli({"sweep", "--axis", "gamma", "--n-q", "200", "--n-p", "400",
                          "--reps", "2", "--out", base});
  CHECK(r.code == kExitOk);
  const auto rows = read_summary_csv(base + ".summary.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].gamma == 0.5);
  CHECK(rows[4].gamma == 2.5);
  CHECK(fs::exists(base + ".curve.4.csv"));

  const auto svg = (dir / "gamma.svg").string();
  const auto p = run_cli({"plot", "--input", base + ".summary.csv", "--axis", "gamma",
                          "--out", svg});
  CHECK(p.code == kExitOk);
  std::ifstream in(svg);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str().find("<svg") != std::string::npos);
  CHECK(body.str().find("</svg>") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == kExitUsage);
  CHECK(run_cli({"run", "--bogus"}).code == kExitUsage);
  CHECK(run_cli({"run", "--scenario", "s9"}).code == kExitUsage);
  CHECK(run_cli({"run", "--n-q", "2"}).code == kExitUsage);
  CHECK(run_cli({"sweep", "--n-q", "100"}).code == kExitUsage);
  CHECK(run_cli({"sweep", "--axis", "kappa", "--values", "0.5,1.5"}).code == kExitUsage);
  CHECK(run_cli({"plot", "--axis", "gamma"}).code == kExitUsage);
  CHECK(run_cli({"--help"}).code == kExitOk);
}

TEST_CASE("selftest") {
  const auto r = run_cli({"selftest", "--episodes", "1", "--n-q", "300"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("0 failures") != std::string::npos);
}

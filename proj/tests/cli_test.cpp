// End-to-end checks of the cpnet binary: spawns the real executable (path in
// argv[1]) and asserts on exit codes, file outputs and the stdout/stderr
// contract.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

#define CHECK_TRUE(cond)                                                   \
  do {                                                                     \
    if (!(cond)) {                                                         \
      ++failures;                                                          \
      std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  " << #cond \
                << "\n";                                                   \
    }                                                                      \
  } while (0)

std::string cli;
fs::path dir;

int run(const std::string& args, const std::string& tag) {
  const std::string cmd = cli + " " + args + " >" + (dir / (tag + ".out")).string() +
                          " 2>" + (dir / (tag + ".err")).string();
  const int rc = std::system(cmd.c_str());
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string out_of(const std::string& tag) { return slurp(dir / (tag + ".out")); }
std::string err_of(const std::string& tag) { return slurp(dir / (tag + ".err")); }

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text) n += ch == '\n';
  return n;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-cpnet-binary>\n";
    return 2;
  }
  cli = argv[1];
  dir = fs::temp_directory_path() / "cpnet_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = dir.string();

  // generate: p = 0 yields an empty edge file and exit 0.
  CHECK_TRUE(run("--seed 1 generate --model er --n 100 --p 0 --out " + d +
                     "/empty.tsv",
                 "gen_empty") == 0);
  CHECK_TRUE(slurp(dir / "empty.tsv").empty());

  // generate: identical seeds give byte-identical outputs.
  const std::string gen_args =
      "generate --model cpsbm --n 1000 --k 100 --p11 0.015 --p12 0.0075 "
      "--p22 0.001";
  CHECK_TRUE(run("--seed 7 " + gen_args + " --out " + d +
                     "/a.tsv --labels-out " + d + "/a.labels",
                 "gen_a") == 0);
  CHECK_TRUE(run("--seed 7 " + gen_args + " --out " + d +
                     "/b.tsv --labels-out " + d + "/b.labels",
                 "gen_b") == 0);
  CHECK_TRUE(slurp(dir / "a.tsv") == slurp(dir / "b.tsv"));
  CHECK_TRUE(slurp(dir / "a.labels") == slurp(dir / "b.labels"));
  CHECK_TRUE(count_lines(slurp(dir / "a.labels")) == 1000);

  // Re-ingested edge count sits within 4 sigma of the model expectation.
  {
    const double mean = 4950 * 0.015 + 100 * 900 * 0.0075 + 404550 * 0.001;
    const double sd = std::sqrt(mean);  // q are small; binomial var ~ mean
    const double m = static_cast<double>(count_lines(slurp(dir / "a.tsv")));
    CHECK_TRUE(std::abs(m - mean) < 4 * sd);
  }

  // ER with --labels-out: file skipped with a note, exit 0.
  CHECK_TRUE(run("--seed 1 generate --model er --n 50 --p 0.2 --out " + d +
                     "/er.tsv --labels-out " + d + "/er.labels",
                 "gen_er") == 0);
  CHECK_TRUE(!fs::exists(dir / "er.labels"));
  CHECK_TRUE(err_of("gen_er").find("no true core-periphery labels") !=
             std::string::npos);

  // detect: result JSON is well formed and stdout stays empty.
  CHECK_TRUE(run("--seed 3 detect --graph " + d + "/a.tsv --restarts 5 --out " +
                     d + "/det.json",
                 "detect") == 0);
  CHECK_TRUE(out_of("detect").empty());
  {
    const auto j = nlohmann::json::parse(slurp(dir / "det.json"));
    CHECK_TRUE(j.at("k").get<int>() > 0);
    CHECK_TRUE(j.at("labels").size() == 1000);
    CHECK_TRUE(j.at("restart_t").size() == 5);
  }

  // detect with --fixed-k pins the core size.
  CHECK_TRUE(run("--seed 3 detect --graph " + d +
                     "/a.tsv --restarts 3 --fixed-k 17 --out " + d +
                     "/det_k.json",
                 "detect_k") == 0);
  CHECK_TRUE(nlohmann::json::parse(slurp(dir / "det_k.json")).at("k") == 17);

  // test: the 4-node star violates the k_hat * p_hat > 1 guard -> exit 2.
  write_file(dir / "star.tsv", "0 1\n0 2\n0 3\n");
  CHECK_TRUE(run("--seed 3 test --graph " + d + "/star.tsv --null er --out " +
                     d + "/star_report.json",
                 "test_star") == 2);
  {
    const auto j = nlohmann::json::parse(slurp(dir / "star_report.json"));
    CHECK_TRUE(j.at("guards").at("k_rho_ok").get<bool>() == false);
    CHECK_TRUE(j.at("interpretation") == "not-applicable");
  }

  // test: strong CP-SBM rejects both nulls -> endogenous-cp, exit 0.
  CHECK_TRUE(run("--seed 11 generate --model cpsbm --n 600 --k 60 --p11 0.20 "
                 "--p12 0.10 --p22 0.02 --out " +
                     d + "/strong.tsv",
                 "gen_strong") == 0);
  CHECK_TRUE(run("--seed 11 test --graph " + d +
                     "/strong.tsv --null both --out " + d + "/strong.json",
                 "test_strong") == 0);
  {
    const auto j = nlohmann::json::parse(slurp(dir / "strong.json"));
    CHECK_TRUE(j.at("er").at("reject").get<bool>());
    CHECK_TRUE(j.at("interpretation") == "endogenous-cp");
  }

  // rho: prints the values on stdout, nothing else.
  CHECK_TRUE(run("rho --model er --n 50 --p 0.1", "rho_er") == 0);
  CHECK_TRUE(out_of("rho_er") == "rho_tilde 0\n");
  CHECK_TRUE(run("--seed 2 rho --model cpsbm --n 100 --k 10 --p11 0.4 "
                 "--p12 0.2 --p22 0.05",
                 "rho_sbm") == 0);
  CHECK_TRUE(out_of("rho_sbm").find("rho_tilde 0.") == 0);
  CHECK_TRUE(out_of("rho_sbm").find("rho_c_star 0.") != std::string::npos);

  // simulate: runs a config and writes deterministic CSVs.
  write_file(dir / "exp.json", R"({
    "kind": "testing",
    "name": "smoke",
    "seed": 5,
    "reps": 3,
    "nulls": "er",
    "detect": {"restarts": 3},
    "grid": [{"variant": "cpsbm", "n": 150, "params":
              {"p11": 0.5, "p12": 0.25, "p22": 0.05, "k": 15}}]
  })");
  CHECK_TRUE(run("simulate --config " + d + "/exp.json --out-dir " + d +
                     "/sim1",
                 "sim1") == 0);
  CHECK_TRUE(run("simulate --config " + d + "/exp.json --out-dir " + d +
                     "/sim2",
                 "sim2") == 0);
  CHECK_TRUE(fs::exists(dir / "sim1/smoke_trials.csv"));
  CHECK_TRUE(fs::exists(dir / "sim1/smoke_aggregate.csv"));
  CHECK_TRUE(slurp(dir / "sim1/smoke_trials.csv") ==
             slurp(dir / "sim2/smoke_trials.csv"));
  CHECK_TRUE(slurp(dir / "sim1/smoke_aggregate.csv") ==
             slurp(dir / "sim2/smoke_aggregate.csv"));

  // Without --seed an entropy seed is echoed to stderr for replay.
  CHECK_TRUE(run("generate --model er --n 20 --p 0.1 --out " + d +
                     "/noseed.tsv",
                 "noseed") == 0);
  CHECK_TRUE(err_of("noseed").rfind("seed ", 0) == 0);

  // Errors: missing file and malformed input exit 1 with one-line stderr.
  CHECK_TRUE(run("--seed 1 detect --graph " + d + "/missing.tsv --out " + d +
                     "/x.json",
                 "missing") == 1);
  CHECK_TRUE(err_of("missing").rfind("error: ", 0) == 0);
  write_file(dir / "bad.tsv", "0 1\nonly_one_token\n");
  CHECK_TRUE(run("--seed 1 detect --graph " + d + "/bad.tsv --out " + d +
                     "/x.json",
                 "bad") == 1);
  CHECK_TRUE(err_of("bad").find("line 2") != std::string::npos);

  if (failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_tests: " << failures << " check(s) failed\n";
  return 1;
}

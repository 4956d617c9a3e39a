#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpnet/sim.hpp"
#include "doctest.h"

using namespace cpnet;

namespace {

Experiment tiny_detection_experiment() {
  Experiment e;
  e.kind = ExperimentKind::detection;
  e.name = "tiny_detection";
  e.grid = {ModelSpec::cp_sbm(60, 6, 0.6, 0.3, 0.03),
            ModelSpec::cp_sbm(60, 6, 0.8, 0.4, 0.03)};
  e.param_values = {0.3, 0.4};
  e.reps = 4;
  e.detect.restarts = 4;
  e.seed = 20250101;
  e.threads = 2;
  return e;
}

Experiment tiny_testing_experiment() {
  Experiment e;
  e.kind = ExperimentKind::testing;
  e.name = "tiny_testing";
  e.grid = {ModelSpec::cp_sbm(200, 20, 0.5, 0.25, 0.03),
            ModelSpec::erdos_renyi(200, 0.2)};
  e.reps = 4;
  e.detect.restarts = 4;
  e.nulls = NullModel::both;
  e.seed = 77;
  e.threads = 2;
  return e;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("detection experiment: trials, aggregates and determinism") {
  const Experiment e = tiny_detection_experiment();
  const ExperimentResult a = run_experiment(e);
  const ExperimentResult b = run_experiment(e);

  REQUIRE(a.trials.size() == 8);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].seed == b.trials[i].seed);
    CHECK(a.trials[i].accuracy == b.trials[i].accuracy);
    CHECK(a.trials[i].status == TrialStatus::ok);
    CHECK(a.trials[i].rho_tilde.has_value());
  }
  // Trials are ordered by (grid_index, rep) regardless of scheduling.
  CHECK(a.trials[0].grid_index == 0);
  CHECK(a.trials[0].rep == 0);
  CHECK(a.trials[5].grid_index == 1);
  CHECK(a.trials[5].rep == 1);

  REQUIRE(a.aggregates.size() == 2);
  CHECK(a.aggregates[0].param_value == 0.3);
  CHECK(a.aggregates[0].accuracy.has_value());
  CHECK(a.aggregates[0].accuracy->mean > 0.8);
  CHECK(a.aggregates[1].rho_tilde.has_value());

  // An independent re-derivation of the aggregate from the trial log.
  double mean = 0.0;
  for (int rep = 0; rep < 4; ++rep) mean += *a.trials[rep].accuracy;
  mean /= 4.0;
  CHECK(a.aggregates[0].accuracy->mean == doctest::Approx(mean).epsilon(1e-15));
}

TEST_CASE("single-rep experiments report zero standard error") {
  Experiment e = tiny_detection_experiment();
  e.reps = 1;
  const ExperimentResult r = run_experiment(e);
  REQUIRE(r.aggregates[0].accuracy.has_value());
  CHECK(r.aggregates[0].accuracy->se == 0.0);
}

TEST_CASE("testing experiment: per-null rates and se convention") {
  const Experiment e = tiny_testing_experiment();
  const ExperimentResult r = run_experiment(e);
  REQUIRE(r.aggregates.size() == 2);
  for (const auto& g : r.aggregates) {
    if (g.n_ok == 0) continue;
    REQUIRE(g.reject_er.has_value());
    REQUIRE(g.reject_cl.has_value());
    CHECK(g.reject_er->mean >= 0.0);
    CHECK(g.reject_er->mean <= 1.0);
    const double se_expected = std::sqrt(
        g.reject_er->mean * (1.0 - g.reject_er->mean) / g.n_ok);
    CHECK(g.reject_er->se == doctest::Approx(se_expected).epsilon(1e-15));
  }
  // The strong CP-SBM grid point should mostly reject the ER null.
  CHECK(r.aggregates[0].reject_er->mean >= 0.75);
}

TEST_CASE("guard-violating trials are counted as not applicable") {
  Experiment e;
  e.kind = ExperimentKind::testing;
  // Sparse tiny network: k_hat * p_hat stays below 1.
  e.grid = {ModelSpec::erdos_renyi(30, 0.05)};
  e.reps = 5;
  e.detect.restarts = 2;
  e.seed = 5;
  const ExperimentResult r = run_experiment(e);
  const auto& g = r.aggregates[0];
  CHECK(g.n_na > 0);
  CHECK(g.n_na + g.n_ok + g.n_failed == 5);
  for (const auto& t : r.trials)
    if (t.status == TrialStatus::not_applicable)
      CHECK_FALSE(t.reject_er.has_value());
}

TEST_CASE("detection grids refuse ER specs") {
  Experiment e = tiny_detection_experiment();
  e.grid.push_back(ModelSpec::erdos_renyi(50, 0.2));
  CHECK_THROWS_AS(run_experiment(e), std::invalid_argument);
}

TEST_CASE("experiment output files are deterministic and re-derivable") {
  const auto dir = std::filesystem::temp_directory_path() / "cpnet_sim_test";
  std::filesystem::remove_all(dir);

  const Experiment e = tiny_testing_experiment();
  run_experiment_to_dir(e, dir.string());
  const std::string trials1 = slurp(dir / "tiny_testing_trials.csv");
  const std::string agg1 = slurp(dir / "tiny_testing_aggregate.csv");
  run_experiment_to_dir(e, dir.string());
  CHECK(slurp(dir / "tiny_testing_trials.csv") == trials1);
  CHECK(slurp(dir / "tiny_testing_aggregate.csv") == agg1);

  CHECK(trials1.substr(0, trials1.find('\n')) ==
        "grid_index,rep,seed,rho_tilde,accuracy,reject_er,reject_cl,"
        "t1,t2,c1_er,c2_er,c1_cl,wall_ms,status");
  CHECK(agg1.substr(0, agg1.find('\n')) ==
        "grid_index,param_value,rho_tilde,metric,mean,se,n_failed,n_na");

  // Re-derive the ER rejection rate for grid point 0 from the trial file and
  // compare with the aggregate row, exactly.
  std::istringstream tin(trials1);
  std::string line;
  std::getline(tin, line);  // header
  int hits = 0, total = 0;
  while (std::getline(tin, line)) {
    std::vector<std::string> cols;
    std::string col;
    std::istringstream ls(line);
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols[0] != "0" || cols[13] != "ok") continue;
    ++total;
    hits += cols[5] == "1";
  }
  REQUIRE(total > 0);
  const double rate = static_cast<double>(hits) / total;

  std::istringstream ain(agg1);
  std::getline(ain, line);
  bool found = false;
  while (std::getline(ain, line)) {
    std::vector<std::string> cols;
    std::string col;
    std::istringstream ls(line);
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols[0] == "0" && cols[3] == "reject_er") {
      CHECK(std::stod(cols[4]) == rate);
      found = true;
    }
  }
  CHECK(found);
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiment JSON config parsing") {
  const std::string config = R"({
    "kind": "testing",
    "name": "cfg",
    "seed": 99,
    "reps": 3,
    "nulls": "both",
    "threads": 2,
    "detect": {"restarts": 5, "init_core_prob": 0.4},
    "param_values": [0.1, 0.2],
    "grid": [
      {"variant": "er", "n": 100, "params": {"p": 0.1}},
      {"variant": "cpsbm", "n": 100, "sparsity": 1.0,
       "params": {"p11": 0.4, "p12": 0.2, "p22": 0.05, "k": 10}}
    ]
  })";
  const Experiment e = Experiment::from_json(config);
  CHECK(e.kind == ExperimentKind::testing);
  CHECK(e.name == "cfg");
  CHECK(e.seed == 99);
  CHECK(e.reps == 3);
  CHECK(e.nulls == NullModel::both);
  CHECK(e.detect.restarts == 5);
  CHECK(e.detect.init_core_prob == 0.4);
  CHECK(e.grid.size() == 2);
  CHECK(e.grid[1].core_size() == 10);
  CHECK(e.param_values == std::vector<double>{0.1, 0.2});

  CHECK_THROWS(Experiment::from_json(R"({"kind": "nope", "grid": []})"));
  CHECK_THROWS(Experiment::from_json(R"({"kind": "testing", "grid": []})"));
}

TEST_CASE("trial seeds are stable and collision-averse") {
  CHECK(trial_seed(1, 0, 0) == trial_seed(1, 0, 0));
  CHECK(trial_seed(1, 0, 1) != trial_seed(1, 1, 0));
  CHECK(trial_seed(1, 2, 3) != trial_seed(2, 2, 3));
}

// Seeded Monte-Carlo experiment harness: sweeps a grid of model specs,
// replicates trials per grid point with deterministically split seeds, and
// writes per-trial plus aggregate CSV files.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpnet/detect.hpp"
#include "cpnet/hyptest.hpp"
#include "cpnet/models.hpp"

namespace cpnet {

enum class ExperimentKind { detection, testing };

struct Experiment {
  ExperimentKind kind = ExperimentKind::detection;
  std::string name = "experiment";
  std::vector<ModelSpec> grid;
  // x-axis value per grid point for the aggregate file (defaults to the grid
  // index when absent).
  std::vector<double> param_values;
  int reps = 0;  // 0 = kind default (20 detection, 100 testing)
  DetectConfig detect;
  NullModel nulls = NullModel::er;
  std::uint64_t seed = 0;
  int threads = 0;

  static Experiment from_json(const std::string& text);
};

enum class TrialStatus { ok, failed, not_applicable };

struct TrialRecord {
  int grid_index = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  std::optional<double> rho_tilde;
  std::optional<double> accuracy;           // detection
  std::optional<bool> reject_er, reject_cl; // testing
  std::optional<double> t1, t2, c1_er, c2_er, c1_cl;
  double wall_ms = 0.0;
  TrialStatus status = TrialStatus::ok;
  std::string error;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

struct GridPointResult {
  int grid_index = 0;
  double param_value = 0.0;
  std::optional<double> rho_tilde;  // mean over successful trials
  std::optional<MeanSe> accuracy;
  std::optional<MeanSe> reject_er;  // rates over applicable trials
  std::optional<MeanSe> reject_cl;
  int n_ok = 0;
  int n_failed = 0;
  int n_na = 0;
  double mean_wall_ms = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;       // ordered by (grid_index, rep)
  std::vector<GridPointResult> aggregates;
};

// The seed that trial (grid_index, rep) runs under; exposed so external
// checkers can reproduce single trials.
std::uint64_t trial_seed(std::uint64_t master_seed, int grid_index, int rep);

ExperimentResult run_experiment(const Experiment& e);

// Aggregation is a pure function of the trial log so results can be
// re-derived and compared.
std::vector<GridPointResult> aggregate_trials(
    const Experiment& e, const std::vector<TrialRecord>& trials);

void write_trials_csv(const std::vector<TrialRecord>& trials,
                      std::ostream& out);
void write_aggregates_csv(const std::vector<GridPointResult>& aggregates,
                          ExperimentKind kind, std::ostream& out);

// Runs the experiment and writes "<name>_trials.csv" and
// "<name>_aggregate.csv" under out_dir (atomically: temp file + rename).
// Returns the result for further inspection.
ExperimentResult run_experiment_to_dir(const Experiment& e,
                                       const std::string& out_dir);

}  // namespace cpnet

#include "cpnet/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cpnet/parallel.hpp"
#include "cpnet/rng.hpp"
#include "json.hpp"

namespace cpnet {

namespace {

constexpr std::uint64_t kSampleStream = 0x51a0001;
constexpr std::uint64_t kDetectStream = 0x51a0002;

int default_reps(ExperimentKind kind) {
  return kind == ExperimentKind::detection ? 20 : 100;
}

void validate(const Experiment& e) {
  if (e.grid.empty()) throw std::invalid_argument("experiment: empty grid");
  if (!e.param_values.empty() && e.param_values.size() != e.grid.size())
    throw std::invalid_argument(
        "experiment: param_values length != grid length");
  if (e.reps < 0) throw std::invalid_argument("experiment: reps must be >= 0");
  if (e.kind == ExperimentKind::detection) {
    for (const auto& spec : e.grid)
      if (spec.kind() == ModelKind::er)
        throw std::invalid_argument(
            "experiment: detection grids need ground truth (no ER specs)");
  }
}

// Number formatting for the CSVs: round-trip precision so aggregates can be
// re-derived from the trial file exactly.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string opt_fmt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

std::string opt_fmt(const std::optional<bool>& v) {
  return v ? std::string(*v ? "1" : "0") : std::string();
}

const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::ok: return "ok";
    case TrialStatus::failed: return "failed";
    case TrialStatus::not_applicable: return "na";
  }
  return "?";
}

MeanSe rate_with_se(std::int64_t hits, std::int64_t total) {
  MeanSe out;
  out.mean = static_cast<double>(hits) / static_cast<double>(total);
  out.se = total > 1
               ? std::sqrt(out.mean * (1.0 - out.mean) /
                           static_cast<double>(total))
               : 0.0;
  return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, int grid_index, int rep) {
  return mix_seed(master_seed, static_cast<std::uint64_t>(grid_index),
                  static_cast<std::uint64_t>(rep));
}

ExperimentResult run_experiment(const Experiment& e) {
  validate(e);
  const int reps = e.reps > 0 ? e.reps : default_reps(e.kind);
  const std::size_t total = e.grid.size() * static_cast<std::size_t>(reps);

  ExperimentResult result;
  result.trials.resize(total);

  parallel_for(total, e.threads, [&](std::size_t idx) {
    const int gi = static_cast<int>(idx / reps);
    const int rep = static_cast<int>(idx % reps);
    TrialRecord& rec = result.trials[idx];
    rec.grid_index = gi;
    rec.rep = rep;
    rec.seed = trial_seed(e.seed, gi, rep);

    const auto start = std::chrono::steady_clock::now();
    try {
      const SampleResult s = sample(e.grid[gi], mix_seed(rec.seed, kSampleStream));
      try {
        rec.rho_tilde = max_pop_rho(s.spec).value;
      } catch (const std::exception&) {
        // rho_tilde is a reporting convenience; leave it empty if the
        // model's condition fails at a size where search is infeasible.
      }

      DetectConfig cfg = e.detect;
      cfg.seed = mix_seed(rec.seed, kDetectStream);
      cfg.threads = 1;  // trials are already parallel

      if (e.kind == ExperimentKind::detection) {
        const DetectResult det = detect(s.graph, cfg);
        rec.accuracy = 1.0 - misclassification(det.labels, *s.truth.labels);
      } else {
        const TestReport rep_out = run_test(s.graph, cfg, e.nulls);
        rec.t1 = rep_out.t1;
        rec.t2 = rep_out.t2;
        if (!rep_out.k_rho_ok) {
          rec.status = TrialStatus::not_applicable;
        } else {
          if (rep_out.er) {
            rec.reject_er = rep_out.er->reject;
            rec.c1_er = rep_out.er->c1;
            rec.c2_er = rep_out.er->c2;
          }
          if (rep_out.cl) {
            rec.reject_cl = rep_out.cl->reject;
            rec.c1_cl = rep_out.cl->c1;
          }
        }
      }
    } catch (const std::exception& ex) {
      rec.status = TrialStatus::failed;
      rec.error = ex.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  });

  result.aggregates = aggregate_trials(e, result.trials);
  return result;
}

std::vector<GridPointResult> aggregate_trials(
    const Experiment& e, const std::vector<TrialRecord>& trials) {
  std::vector<GridPointResult> out(e.grid.size());
  for (std::size_t gi = 0; gi < e.grid.size(); ++gi) {
    GridPointResult& g = out[gi];
    g.grid_index = static_cast<int>(gi);
    g.param_value = e.param_values.empty() ? static_cast<double>(gi)
                                           : e.param_values[gi];

    double rho_sum = 0.0, wall_sum = 0.0, acc_sum = 0.0, acc_sq = 0.0;
    std::int64_t rho_n = 0, wall_n = 0, acc_n = 0;
    std::int64_t er_hits = 0, er_total = 0, cl_hits = 0, cl_total = 0;
    for (const auto& t : trials) {
      if (t.grid_index != static_cast<int>(gi)) continue;
      if (t.status == TrialStatus::failed) {
        ++g.n_failed;
        continue;
      }
      wall_sum += t.wall_ms;
      ++wall_n;
      if (t.rho_tilde) {
        rho_sum += *t.rho_tilde;
        ++rho_n;
      }
      if (t.status == TrialStatus::not_applicable) {
        ++g.n_na;
        continue;
      }
      ++g.n_ok;
      if (t.accuracy) {
        acc_sum += *t.accuracy;
        acc_sq += *t.accuracy * *t.accuracy;
        ++acc_n;
      }
      if (t.reject_er) {
        er_total += 1;
        er_hits += *t.reject_er ? 1 : 0;
      }
      if (t.reject_cl) {
        cl_total += 1;
        cl_hits += *t.reject_cl ? 1 : 0;
      }
    }
    if (rho_n > 0) g.rho_tilde = rho_sum / static_cast<double>(rho_n);
    if (wall_n > 0) g.mean_wall_ms = wall_sum / static_cast<double>(wall_n);
    if (acc_n > 0) {
      MeanSe acc;
      acc.mean = acc_sum / static_cast<double>(acc_n);
      if (acc_n > 1) {
        const double var =
            (acc_sq - acc_sum * acc_sum / static_cast<double>(acc_n)) /
            static_cast<double>(acc_n - 1);
        acc.se = std::sqrt(std::max(0.0, var) / static_cast<double>(acc_n));
      }
      g.accuracy = acc;
    }
    if (er_total > 0) g.reject_er = rate_with_se(er_hits, er_total);
    if (cl_total > 0) g.reject_cl = rate_with_se(cl_hits, cl_total);
  }
  return out;
}

void write_trials_csv(const std::vector<TrialRecord>& trials,
                      std::ostream& out) {
  out << "grid_index,rep,seed,rho_tilde,accuracy,reject_er,reject_cl,"
         "t1,t2,c1_er,c2_er,c1_cl,wall_ms,status\n";
  for (const auto& t : trials) {
    out << t.grid_index << ',' << t.rep << ',' << t.seed << ','
        << opt_fmt(t.rho_tilde) << ',' << opt_fmt(t.accuracy) << ','
        << opt_fmt(t.reject_er) << ',' << opt_fmt(t.reject_cl) << ','
        << opt_fmt(t.t1) << ',' << opt_fmt(t.t2) << ',' << opt_fmt(t.c1_er)
        << ',' << opt_fmt(t.c2_er) << ',' << opt_fmt(t.c1_cl) << ','
        << fmt(t.wall_ms) << ',' << to_string(t.status) << '\n';
  }
}

void write_aggregates_csv(const std::vector<GridPointResult>& aggregates,
                          ExperimentKind kind, std::ostream& out) {
  out << "grid_index,param_value,rho_tilde,metric,mean,se,n_failed,n_na\n";
  auto row = [&](const GridPointResult& g, const char* metric,
                 const MeanSe& ms) {
    out << g.grid_index << ',' << fmt(g.param_value) << ','
        << (g.rho_tilde ? fmt(*g.rho_tilde) : std::string()) << ',' << metric
        << ',' << fmt(ms.mean) << ',' << fmt(ms.se) << ',' << g.n_failed << ','
        << g.n_na << '\n';
  };
  for (const auto& g : aggregates) {
    if (kind == ExperimentKind::detection) {
      if (g.accuracy) row(g, "accuracy", *g.accuracy);
    } else {
      if (g.reject_er) row(g, "reject_er", *g.reject_er);
      if (g.reject_cl) row(g, "reject_cl", *g.reject_cl);
      if (!g.reject_er && !g.reject_cl)
        row(g, "reject_na", MeanSe{});  // every trial failed or was n/a
    }
  }
}

namespace {

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

ExperimentResult run_experiment_to_dir(const Experiment& e,
                                       const std::string& out_dir) {
  ExperimentResult result = run_experiment(e);
  std::filesystem::create_directories(out_dir);
  std::ostringstream trials, aggregates;
  write_trials_csv(result.trials, trials);
  write_aggregates_csv(result.aggregates, e.kind, aggregates);
  const std::filesystem::path dir(out_dir);
  write_file_atomic(dir / (e.name + "_trials.csv"), trials.str());
  write_file_atomic(dir / (e.name + "_aggregate.csv"), aggregates.str());
  return result;
}

Experiment Experiment::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Experiment e;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "detection")
    e.kind = ExperimentKind::detection;
  else if (kind == "testing")
    e.kind = ExperimentKind::testing;
  else
    throw std::runtime_error("experiment json: kind must be detection|testing");

  e.name = j.value("name", std::string("experiment"));
  e.seed = j.value("seed", static_cast<std::uint64_t>(0));
  e.reps = j.value("reps", 0);
  e.threads = j.value("threads", 0);

  if (j.contains("nulls")) {
    const std::string nulls = j.at("nulls").get<std::string>();
    if (nulls == "er")
      e.nulls = NullModel::er;
    else if (nulls == "cl")
      e.nulls = NullModel::cl;
    else if (nulls == "both")
      e.nulls = NullModel::both;
    else
      throw std::runtime_error("experiment json: nulls must be er|cl|both");
  }

  if (j.contains("detect")) {
    const nlohmann::json& d = j.at("detect");
    e.detect.restarts = d.value("restarts", e.detect.restarts);
    e.detect.init_core_prob =
        d.value("init_core_prob", e.detect.init_core_prob);
    e.detect.max_passes = d.value("max_passes", e.detect.max_passes);
    if (d.contains("fixed_k")) e.detect.fixed_k = d.at("fixed_k").get<int>();
  }

  for (const auto& spec : j.at("grid"))
    e.grid.push_back(ModelSpec::from_json(spec.dump()));
  if (j.contains("param_values"))
    e.param_values = j.at("param_values").get<std::vector<double>>();

  validate(e);
  return e;
}

}  // namespace cpnet

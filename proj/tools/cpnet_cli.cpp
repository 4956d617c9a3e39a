// cpnet command-line front end.
//
// Subcommands: generate (sample a model to an edge list), detect (estimate
// core/periphery labels), test (intersection hypothesis tests), rho
// (population CP strength of a spec), simulate (Monte-Carlo sweeps to CSV).
//
// Exit codes: 0 success, 1 error, 2 test guard violation (report written,
// result not applicable). Data goes to files or stdout; diagnostics to
// stderr. Runs are reproducible under --seed; without it an entropy seed is
// drawn and echoed to stderr for replay.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpnet/bayes_sbm.hpp"
#include "cpnet/detect.hpp"
#include "cpnet/graph.hpp"
#include "cpnet/hyptest.hpp"
#include "cpnet/models.hpp"
#include "cpnet/sim.hpp"

namespace {

using namespace cpnet;

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (target.has_parent_path())
    std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
  }
  std::filesystem::rename(tmp, target);
}

struct ModelFlags {
  std::string model;
  int n = 0;
  double sparsity = 1.0;
  double p = -1.0;
  double p11 = -1.0, p12 = -1.0, p22 = -1.0;
  int k = 0;
  std::vector<double> theta_core, theta_periphery;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--model", f.model, "er|cpsbm|cl|cpdcbm")
      ->required()
      ->check(CLI::IsMember({"er", "cpsbm", "cl", "cpdcbm"}));
  cmd->add_option("--n", f.n, "node count")->required();
  cmd->add_option("--sparsity", f.sparsity, "sparsity factor (default 1)");
  cmd->add_option("--p", f.p, "ER edge probability");
  cmd->add_option("--p11", f.p11, "core-core block rate");
  cmd->add_option("--p12", f.p12, "core-periphery block rate");
  cmd->add_option("--p22", f.p22, "periphery-periphery block rate");
  cmd->add_option("--k", f.k, "core size");
  cmd->add_option("--theta-core", f.theta_core,
                  "uniform interval for core degree weights")
      ->expected(2);
  cmd->add_option("--theta-periphery", f.theta_periphery,
                  "uniform interval for periphery degree weights")
      ->expected(2);
}

ModelSpec build_spec(const ModelFlags& f) {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok)
      throw std::runtime_error("model " + f.model + " requires " + what);
  };
  auto intervals = [&]() {
    need(f.theta_core.size() == 2 && f.theta_periphery.size() == 2,
         "--theta-core and --theta-periphery");
    return ThetaIntervals{f.theta_core[0], f.theta_core[1],
                          f.theta_periphery[0], f.theta_periphery[1]};
  };
  if (f.model == "er") {
    need(f.p >= 0.0, "--p");
    return ModelSpec::erdos_renyi(f.n, f.p, f.sparsity);
  }
  need(f.k > 0, "--k");
  if (f.model == "cpsbm") {
    need(f.p11 >= 0.0 && f.p12 >= 0.0 && f.p22 >= 0.0, "--p11 --p12 --p22");
    return ModelSpec::cp_sbm(f.n, f.k, f.p11, f.p12, f.p22, f.sparsity);
  }
  if (f.model == "cl") return ModelSpec::chung_lu(f.n, f.k, intervals(), f.sparsity);
  need(f.p11 >= 0.0 && f.p12 >= 0.0 && f.p22 >= 0.0, "--p11 --p12 --p22");
  return ModelSpec::cp_dcbm(f.n, f.k, intervals(), f.p11, f.p12, f.p22,
                            f.sparsity);
}

IngestResult load_graph(const std::string& path) {
  IngestResult in = read_edge_list_file(path);
  if (in.stats.self_loops_dropped > 0)
    std::cerr << "note: dropped " << in.stats.self_loops_dropped
              << " self-loop(s)\n";
  if (in.stats.duplicates_merged > 0)
    std::cerr << "note: merged " << in.stats.duplicates_merged
              << " duplicate edge(s)\n";
  return in;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_generate(const ModelFlags& flags, std::uint64_t seed,
                 const std::string& out, const std::string& labels_out) {
  const ModelSpec spec = build_spec(flags);
  const SampleResult s = sample(spec, seed);

  std::ostringstream edges;
  write_edge_list(s.graph, edges);
  write_text_atomic(out, edges.str());

  if (!labels_out.empty()) {
    if (s.truth.labels) {
      std::ostringstream labels;
      write_labels(*s.truth.labels, labels);
      write_text_atomic(labels_out, labels.str());
    } else {
      std::cerr << "note: ER model has no true core-periphery labels; "
                   "skipping "
                << labels_out << '\n';
    }
  }
  return 0;
}

int cmd_detect(const std::string& graph_path, int restarts, int fixed_k,
               std::uint64_t seed, const std::string& out) {
  const IngestResult in = load_graph(graph_path);
  DetectConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  if (fixed_k > 0) cfg.fixed_k = fixed_k;
  const DetectResult res = detect(in.graph, cfg);
  write_text_atomic(out, res.to_json() + "\n");
  return 0;
}

int cmd_test(const std::string& graph_path, const std::string& null_name,
             int restarts, std::uint64_t seed, const std::string& out) {
  const IngestResult in = load_graph(graph_path);
  const NullModel nulls = null_name == "er"   ? NullModel::er
                          : null_name == "cl" ? NullModel::cl
                                              : NullModel::both;
  DetectConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  const TestReport report = run_test(in.graph, cfg, nulls);
  write_text_atomic(out, report.to_json() + "\n");
  if (report.cl_clamped > 0)
    std::cerr << "note: clamped " << report.cl_clamped
              << " plug-in probabilities to 1\n";
  if (!report.k_rho_ok) {
    std::cerr << "test not applicable: k_hat * p_hat <= 1 (network too "
                 "sparse or core too small)\n";
    return 2;
  }
  return 0;
}

int cmd_rho(const ModelFlags& flags, std::uint64_t seed) {
  const ModelSpec spec = build_spec(flags).realized(seed);
  const MaxRho mr = max_pop_rho(spec);
  std::cout << "rho_tilde " << fmt(mr.value) << '\n';
  if (spec.kind() != ModelKind::er)
    std::cout << "rho_c_star " << fmt(pop_rho(spec, truth_labels(spec)))
              << '\n';
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 bool seed_given, std::uint64_t seed) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config: " + config_path);
  std::ostringstream text;
  text << in.rdbuf();
  Experiment e = Experiment::from_json(text.str());
  if (seed_given) e.seed = seed;
  run_experiment_to_dir(e, out_dir);
  std::cerr << "wrote " << out_dir << "/" << e.name << "_trials.csv and "
            << out_dir << "/" << e.name << "_aggregate.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"core-periphery analysis toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  auto* seed_opt =
      app.add_option("--seed", seed, "RNG seed (omit for an entropy seed)");

  ModelFlags gen_flags, rho_flags;
  std::string gen_out, gen_labels_out;
  auto* gen = app.add_subcommand("generate", "sample a model to an edge list");
  add_model_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "edge list output path")->required();
  gen->add_option("--labels-out", gen_labels_out, "ground-truth labels path");

  std::string det_graph, det_out;
  int det_restarts = 10, det_fixed_k = 0;
  auto* det = app.add_subcommand("detect", "estimate core-periphery labels");
  det->add_option("--graph", det_graph, "edge list input")->required();
  det->add_option("--restarts", det_restarts, "greedy restarts (default 10)");
  det->add_option("--fixed-k", det_fixed_k, "constrain the core size");
  det->add_option("--out", det_out, "result JSON path")->required();

  std::string test_graph, test_null, test_out;
  int test_restarts = 10;
  auto* tst = app.add_subcommand("test", "intersection hypothesis tests");
  tst->add_option("--graph", test_graph, "edge list input")->required();
  tst->add_option("--null", test_null, "er|cl|both")
      ->required()
      ->check(CLI::IsMember({"er", "cl", "both"}));
  tst->add_option("--restarts", test_restarts, "greedy restarts (default 10)");
  tst->add_option("--out", test_out, "report JSON path")->required();

  auto* rho = app.add_subcommand("rho", "population CP strength of a spec");
  add_model_flags(rho, rho_flags);

  std::string sim_config, sim_out_dir;
  auto* sim = app.add_subcommand("simulate", "run an experiment config");
  sim->add_option("--config", sim_config, "experiment JSON")->required();
  sim->add_option("--out-dir", sim_out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const bool seed_given = seed_opt->count() > 0;
  if (!seed_given && !sim->parsed()) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed " << seed << '\n';
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_flags, seed, gen_out, gen_labels_out);
    if (det->parsed())
      return cmd_detect(det_graph, det_restarts, det_fixed_k, seed, det_out);
    if (tst->parsed())
      return cmd_test(test_graph, test_null, test_restarts, seed, test_out);
    if (rho->parsed()) return cmd_rho(rho_flags, seed);
    if (sim->parsed())
      return cmd_simulate(sim_config, sim_out_dir, seed_given, seed);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}

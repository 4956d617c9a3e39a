// Core-periphery label estimation by greedy maximization of T(A, c) with
// random restarts, plus a fixed-core-size exchange variant.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpnet/graph.hpp"
#include "cpnet/labels.hpp"

namespace cpnet {

struct DetectConfig {
  int restarts = 10;
  double init_core_prob = 0.5;
  std::optional<int> fixed_k;
  int max_passes = 1000;
  std::uint64_t seed = 0;
  // Restarts run on this many workers; 0 = hardware concurrency. The result
  // does not depend on the worker count.
  int threads = 0;
};

struct DetectResult {
  LabelAssignment labels;
  double t_value;
  std::vector<double> restart_t;  // final T per restart
  int passes_used;                // summed over restarts

  // {"k": int, "t": float, "labels": [0/1 ...], "restart_t": [floats]}
  std::string to_json() const;
};

struct GreedyResult {
  LabelAssignment labels;
  double t;
  int passes;
};

// One greedy run: full passes over the nodes in a fresh random order,
// accepting a label swap iff it strictly increases T, until a pass accepts
// nothing (or max_passes). The returned labels are a local maximum under
// single swaps. init must be non-degenerate.
GreedyResult greedy_once(const Graph& g, const LabelAssignment& init,
                         std::uint64_t seed, int max_passes = 1000);

// Same, but moves are core<->periphery label exchanges, so the core size of
// init is preserved exactly.
GreedyResult greedy_once_fixed_k(const Graph& g, const LabelAssignment& init,
                                 std::uint64_t seed, int max_passes = 1000);

// Multi-restart driver: cfg.restarts independent greedy runs from i.i.d.
// Bernoulli(init_core_prob) initial labels (or uniform k-subsets in fixed-k
// mode), returning the best-T result. Deterministic in cfg.seed. Requires
// n >= 3 and a non-degenerate graph (0 < m < C(n,2)).
DetectResult detect(const Graph& g, const DetectConfig& cfg);

}  // namespace cpnet

// Gibbs-sampler baseline: two-block SBM fit under a Poisson likelihood
// approximation with the block-rate prior restricted to p11 > p12 > p22 and a
// uniform prior over label vectors. Nodes with posterior core probability
// above 0.5 are assigned to the core.
#pragma once

#include <cstdint>
#include <vector>

#include "cpnet/graph.hpp"
#include "cpnet/labels.hpp"

namespace cpnet {

struct BayesConfig {
  int iters = 2000;
  int burn_in = 500;
  std::uint64_t seed = 0;
  // Block rates are redrawn until ordered; after this many attempts the draw
  // is sorted into order instead (or the sampler throws if sort_fallback is
  // off).
  int order_reject_cap = 100;
  bool sort_fallback = true;
};

struct BayesResult {
  LabelAssignment labels;
  std::vector<double> core_probability;  // posterior mean per node
  // Set when the input had no edges: the rates are unidentifiable and the
  // all-periphery assignment is returned as-is.
  bool degenerate = false;
};

BayesResult bayes_sbm(const Graph& g, const BayesConfig& cfg);
BayesResult bayes_sbm(const Graph& g, int iters, int burn_in,
                      std::uint64_t seed);

}  // namespace cpnet

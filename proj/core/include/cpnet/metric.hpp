// Sample core-periphery metric T(A, c) — the correlation between the upper
// triangle of the adjacency matrix and the ideal CP pattern
// Delta_ij = c_i + c_j - c_i*c_j — plus O(degree) incremental re-evaluation
// under single-label swaps.
//
// With M1 = #edges touching the core, N1 = #pairs touching the core,
// Abar = m / C(n,2) and Dbar = N1 / C(n,2):
//
//   T = (M1 - Abar*N1) / ( C(n,2) * sqrt(Abar(1-Abar) * Dbar(1-Dbar)) )
//
// which is algebraically the pairwise-sum definition. All pair/edge counts
// are kept in 64-bit integers; C(n,2) overflows 32 bits near n ~ 7e4.
#pragma once

#include <cstdint>
#include <limits>

#include "cpnet/graph.hpp"
#include "cpnet/labels.hpp"

namespace cpnet {

// Exact T(A, c). Throws std::invalid_argument when the metric is undefined:
// degenerate labels (k in {0, n}), empty or complete graph, or length
// mismatch.
double t_sample(const Graph& g, const LabelAssignment& c);

// Mutable bookkeeping for greedy label optimization: maintains the core size
// k and the periphery-periphery edge count m_pp so that toggling one label
// re-evaluates T in O(degree) instead of O(m).
class SwapState {
 public:
  // Sentinel returned by swap_delta for swaps that would make the labeling
  // degenerate; compares smaller than every real T.
  static constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

  SwapState(const Graph& g, LabelAssignment c);

  double t() const { return t_; }
  const LabelAssignment& labels() const { return c_; }
  int core_size() const { return k_; }
  std::int64_t periphery_edge_count() const { return m_pp_; }
  const Graph& graph() const { return *g_; }

  // T after hypothetically toggling node u's label; state unchanged.
  double swap_delta(int u) const;

  // Applies the toggle; throws on an infeasible swap.
  void swap_apply(int u);

  // Neighbors of u currently labeled periphery (O(degree)).
  int periphery_neighbors(int u) const;

 private:
  double t_from(std::int64_t m_pp, int k) const;

  const Graph* g_;
  LabelAssignment c_;
  std::int64_t m_pp_;
  int k_;
  double t_;
};

}  // namespace cpnet

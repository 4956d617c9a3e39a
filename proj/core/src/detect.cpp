#include "cpnet/detect.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cpnet/metric.hpp"
#include "cpnet/parallel.hpp"
#include "cpnet/rng.hpp"
#include "json.hpp"

namespace cpnet {

namespace {

constexpr std::uint64_t kInitStream = 0xd37ec7001;
constexpr std::uint64_t kPassStream = 0xd37ec7002;

void check_graph(const Graph& g) {
  if (g.node_count() < 3)
    throw std::invalid_argument("detect: need at least 3 nodes");
  if (g.edge_count() == 0 || g.edge_count() == g.pair_count())
    throw std::invalid_argument("detect: graph is empty or complete");
}

LabelAssignment random_labels(int n, double core_prob, Rng& rng) {
  std::vector<std::uint8_t> bits(n);
  // Redraw degenerate vectors; force a split if the RNG is spectacularly
  // unlucky so the loop always terminates.
  for (int attempt = 0; attempt < 64; ++attempt) {
    int k = 0;
    for (auto& b : bits) k += (b = rng.bernoulli(core_prob) ? 1 : 0);
    if (k > 0 && k < n) return LabelAssignment(std::move(bits));
  }
  std::fill(bits.begin(), bits.end(), 0);
  bits[0] = 1;
  return LabelAssignment(std::move(bits));
}

LabelAssignment random_k_subset(int n, int k, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: first k entries are a uniform k-subset.
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(n - i));
    std::swap(order[i], order[j]);
  }
  std::vector<std::uint8_t> bits(n, 0);
  for (int i = 0; i < k; ++i) bits[order[i]] = 1;
  return LabelAssignment(std::move(bits));
}

}  // namespace

GreedyResult greedy_once(const Graph& g, const LabelAssignment& init,
                         std::uint64_t seed, int max_passes) {
  check_graph(g);
  SwapState state(g, init);
  Rng rng(mix_seed(seed, kPassStream));

  std::vector<int> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);

  int passes = 0;
  bool improved = true;
  while (improved && passes < max_passes) {
    improved = false;
    ++passes;
    rng.shuffle(order);
    for (int u : order) {
      const double cand = state.swap_delta(u);
      if (cand > state.t()) {
        const double before = state.t();
        state.swap_apply(u);
        assert(state.t() > before);
        (void)before;
        improved = true;
      }
    }
  }
  return GreedyResult{state.labels(), state.t(), passes};
}

GreedyResult greedy_once_fixed_k(const Graph& g, const LabelAssignment& init,
                                 std::uint64_t seed, int max_passes) {
  check_graph(g);
  const int n = g.node_count();
  SwapState state(g, init);
  Rng rng(mix_seed(seed, kPassStream));

  // Periphery-neighbor counts let an exchange be scored in O(log deg).
  std::vector<int> d_peri(n);
  auto recount = [&](int u) {
    int d = 0;
    for (int v : g.neighbors(u)) d += !state.labels().is_core(v);
    return d;
  };
  for (int u = 0; u < n; ++u) d_peri[u] = recount(u);

  // m_pp after exchanging core node u with periphery node v.
  auto exchanged_mpp = [&](int u, int v) {
    return state.periphery_edge_count() + d_peri[u] - d_peri[v] -
           (g.has_edge(u, v) ? 1 : 0);
  };

  const std::int64_t pairs = g.pair_count();
  const std::int64_t m = g.edge_count();
  const int k = state.core_size();
  const std::int64_t n1 =
      pairs - static_cast<std::int64_t>(n - k) * (n - k - 1) / 2;
  const double abar = static_cast<double>(m) / static_cast<double>(pairs);
  const double dbar = static_cast<double>(n1) / static_cast<double>(pairs);
  const double den = static_cast<double>(pairs) *
                     std::sqrt(abar * (1 - abar) * dbar * (1 - dbar));
  auto t_of_mpp = [&](std::int64_t m_pp) {
    return (static_cast<double>(m - m_pp) - abar * static_cast<double>(n1)) /
           den;
  };

  auto apply_exchange = [&](int core_u, int peri_v) {
    // Sequence the two toggles so the intermediate k never hits 0 or n.
    auto to_periphery = [&](int u) {
      state.swap_apply(u);
      for (int w : g.neighbors(u)) ++d_peri[w];
    };
    auto to_core = [&](int v) {
      state.swap_apply(v);
      for (int w : g.neighbors(v)) --d_peri[w];
    };
    if (state.core_size() <= n - 2) {
      to_core(peri_v);
      to_periphery(core_u);
    } else {
      to_periphery(core_u);
      to_core(peri_v);
    }
  };

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  int passes = 0;
  bool improved = true;
  while (improved && passes < max_passes) {
    improved = false;
    ++passes;
    rng.shuffle(order);
    for (int u : order) {
      const bool u_core = state.labels().is_core(u);
      // Best exchange partner of opposite label.
      int best_v = -1;
      double best_t = state.t();
      for (int v = 0; v < n; ++v) {
        if (state.labels().is_core(v) == u_core) continue;
        const std::int64_t m_pp =
            u_core ? exchanged_mpp(u, v) : exchanged_mpp(v, u);
        const double cand = t_of_mpp(m_pp);
        if (cand > best_t) {
          best_t = cand;
          best_v = v;
        }
      }
      if (best_v >= 0) {
        if (u_core)
          apply_exchange(u, best_v);
        else
          apply_exchange(best_v, u);
        improved = true;
      }
    }
  }
  return GreedyResult{state.labels(), state.t(), passes};
}

DetectResult detect(const Graph& g, const DetectConfig& cfg) {
  check_graph(g);
  if (cfg.restarts < 1)
    throw std::invalid_argument("detect: restarts must be >= 1");
  if (!(cfg.init_core_prob > 0.0) || !(cfg.init_core_prob < 1.0))
    throw std::invalid_argument("detect: init_core_prob must be in (0, 1)");
  if (cfg.fixed_k &&
      (*cfg.fixed_k < 1 || *cfg.fixed_k > g.node_count() - 1))
    throw std::invalid_argument("detect: fixed_k must lie in [1, n-1]");

  std::vector<GreedyResult> runs;
  runs.reserve(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r)
    runs.push_back(GreedyResult{LabelAssignment(g.node_count(), false), 0.0, 0});

  parallel_for(static_cast<std::size_t>(cfg.restarts), cfg.threads,
               [&](std::size_t r) {
                 const std::uint64_t rs = mix_seed(cfg.seed, r);
                 Rng init_rng(mix_seed(rs, kInitStream));
                 if (cfg.fixed_k) {
                   LabelAssignment init =
                       random_k_subset(g.node_count(), *cfg.fixed_k, init_rng);
                   runs[r] = greedy_once_fixed_k(g, init, rs, cfg.max_passes);
                 } else {
                   LabelAssignment init = random_labels(
                       g.node_count(), cfg.init_core_prob, init_rng);
                   runs[r] = greedy_once(g, init, rs, cfg.max_passes);
                 }
               });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].t > runs[best].t) best = r;

  DetectResult out{runs[best].labels, runs[best].t, {}, 0};
  out.restart_t.reserve(runs.size());
  for (const auto& run : runs) {
    out.restart_t.push_back(run.t);
    out.passes_used += run.passes;
  }
  return out;
}

std::string DetectResult::to_json() const {
  nlohmann::json j;
  j["k"] = labels.core_size();
  j["t"] = t_value;
  std::vector<int> bits(labels.size());
  for (int i = 0; i < labels.size(); ++i) bits[i] = labels.is_core(i) ? 1 : 0;
  j["labels"] = bits;
  j["restart_t"] = restart_t;
  return j.dump();
}

}  // namespace cpnet

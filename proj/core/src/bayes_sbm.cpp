#include "cpnet/bayes_sbm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cpnet/rng.hpp"

namespace cpnet {

namespace {

constexpr std::uint64_t kGibbsStream = 0xba7e5001;

std::int64_t choose2(std::int64_t x) { return x > 1 ? x * (x - 1) / 2 : 0; }

struct BlockCounts {
  std::int64_t edges_cc = 0, edges_cp = 0, edges_pp = 0;
  std::int64_t pairs_cc = 0, pairs_cp = 0, pairs_pp = 0;
};

BlockCounts count_blocks(const Graph& g, const LabelAssignment& c) {
  BlockCounts out;
  g.for_each_edge([&](int i, int j) {
    const int t = (c.is_core(i) ? 1 : 0) + (c.is_core(j) ? 1 : 0);
    if (t == 2)
      ++out.edges_cc;
    else if (t == 1)
      ++out.edges_cp;
    else
      ++out.edges_pp;
  });
  const std::int64_t k = c.core_size();
  const std::int64_t n = c.size();
  out.pairs_cc = choose2(k);
  out.pairs_cp = k * (n - k);
  out.pairs_pp = choose2(n - k);
  return out;
}

struct Rates {
  double p11, p12, p22;
};

// Gamma(edges + 1, pairs) is the flat-prior Poisson posterior for one block.
// Blocks with no pairs contribute no likelihood; their rate is drawn with
// unit rate so the ordering constraint still has three numbers to compare.
double draw_rate(std::int64_t edges, std::int64_t pairs, Rng& rng) {
  std::gamma_distribution<double> gamma(static_cast<double>(edges) + 1.0, 1.0);
  const double scale = pairs > 0 ? 1.0 / static_cast<double>(pairs) : 1.0;
  return gamma(rng.engine()) * scale;
}

Rates draw_ordered_rates(const BlockCounts& bc, const BayesConfig& cfg,
                         Rng& rng) {
  for (int attempt = 0; attempt < cfg.order_reject_cap; ++attempt) {
    Rates r{draw_rate(bc.edges_cc, bc.pairs_cc, rng),
            draw_rate(bc.edges_cp, bc.pairs_cp, rng),
            draw_rate(bc.edges_pp, bc.pairs_pp, rng)};
    if (r.p11 > r.p12 && r.p12 > r.p22) return r;
  }
  if (!cfg.sort_fallback)
    throw std::runtime_error(
        "bayes_sbm: could not draw ordered block rates within the cap");
  Rates r{draw_rate(bc.edges_cc, bc.pairs_cc, rng),
          draw_rate(bc.edges_cp, bc.pairs_cp, rng),
          draw_rate(bc.edges_pp, bc.pairs_pp, rng)};
  double v[3] = {r.p11, r.p12, r.p22};
  if (v[0] < v[1]) std::swap(v[0], v[1]);
  if (v[1] < v[2]) std::swap(v[1], v[2]);
  if (v[0] < v[1]) std::swap(v[0], v[1]);
  return Rates{v[0], v[1], v[2]};
}

}  // namespace

BayesResult bayes_sbm(const Graph& g, const BayesConfig& cfg) {
  const int n = g.node_count();
  if (n < 3) throw std::invalid_argument("bayes_sbm: need at least 3 nodes");
  if (cfg.burn_in < 0 || cfg.iters <= cfg.burn_in)
    throw std::invalid_argument("bayes_sbm: need iters > burn_in >= 0");

  if (g.edge_count() == 0) {
    return BayesResult{LabelAssignment::all_periphery(n),
                       std::vector<double>(n, 0.0), true};
  }

  Rng rng(mix_seed(cfg.seed, kGibbsStream));

  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
  LabelAssignment c(std::move(bits));

  std::vector<double> accum(n, 0.0);
  const int kept = cfg.iters - cfg.burn_in;

  for (int it = 0; it < cfg.iters; ++it) {
    const Rates r = draw_ordered_rates(count_blocks(g, c), cfg, rng);
    const double l11 = std::log(r.p11), l12 = std::log(r.p12),
                 l22 = std::log(r.p22);

    for (int i = 0; i < n; ++i) {
      int dc = 0;
      for (int v : g.neighbors(i)) dc += c.is_core(v);
      const int dp = g.degree(i) - dc;
      const int k_other = c.core_size() - (c.is_core(i) ? 1 : 0);
      const int p_other = n - 1 - k_other;
      // Poisson log-density of row i under each candidate label; the uniform
      // label prior cancels.
      const double lw1 =
          dc * l11 + dp * l12 - (k_other * r.p11 + p_other * r.p12);
      const double lw0 =
          dc * l12 + dp * l22 - (k_other * r.p12 + p_other * r.p22);
      const double pr_core = 1.0 / (1.0 + std::exp(lw0 - lw1));
      c.set(i, rng.uniform01() < pr_core);
    }

    if (it >= cfg.burn_in)
      for (int i = 0; i < n; ++i) accum[i] += c.is_core(i);
  }

  std::vector<std::uint8_t> out_bits(n);
  std::vector<double> prob(n);
  for (int i = 0; i < n; ++i) {
    prob[i] = accum[i] / static_cast<double>(kept);
    out_bits[i] = prob[i] > 0.5 ? 1 : 0;
  }
  return BayesResult{LabelAssignment(std::move(out_bits)), std::move(prob),
                     false};
}

BayesResult bayes_sbm(const Graph& g, int iters, int burn_in,
                      std::uint64_t seed) {
  BayesConfig cfg;
  cfg.iters = iters;
  cfg.burn_in = burn_in;
  cfg.seed = seed;
  return bayes_sbm(g, cfg);
}

}  // namespace cpnet

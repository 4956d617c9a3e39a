#include "cpnet/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace cpnet {

namespace {

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

void check_defined(const Graph& g, const LabelAssignment& c) {
  if (c.size() != g.node_count())
    throw std::invalid_argument("t_sample: label length != node count");
  const int k = c.core_size();
  if (k == 0 || k == c.size())
    throw std::invalid_argument("t_sample: degenerate labels (k in {0, n})");
  if (g.edge_count() == 0 || g.edge_count() == g.pair_count())
    throw std::invalid_argument(
        "t_sample: metric undefined on empty or complete graph");
}

std::int64_t count_periphery_edges(const Graph& g, const LabelAssignment& c) {
  std::int64_t m_pp = 0;
  g.for_each_edge([&](int i, int j) {
    if (!c.is_core(i) && !c.is_core(j)) ++m_pp;
  });
  return m_pp;
}

}  // namespace

double t_sample(const Graph& g, const LabelAssignment& c) {
  check_defined(g, c);
  return SwapState(g, c).t();
}

SwapState::SwapState(const Graph& g, LabelAssignment c)
    : g_(&g), c_(std::move(c)) {
  check_defined(g, c_);
  k_ = c_.core_size();
  m_pp_ = count_periphery_edges(g, c_);
  t_ = t_from(m_pp_, k_);
}

double SwapState::t_from(std::int64_t m_pp, int k) const {
  const std::int64_t pairs = g_->pair_count();
  const std::int64_t m = g_->edge_count();
  const std::int64_t n1 = pairs - choose2(g_->node_count() - k);
  const double abar = static_cast<double>(m) / static_cast<double>(pairs);
  const double dbar = static_cast<double>(n1) / static_cast<double>(pairs);
  const double num =
      static_cast<double>(m - m_pp) - abar * static_cast<double>(n1);
  const double den = static_cast<double>(pairs) *
                     std::sqrt(abar * (1.0 - abar) * dbar * (1.0 - dbar));
  return num / den;
}

int SwapState::periphery_neighbors(int u) const {
  int d = 0;
  for (int v : g_->neighbors(u)) d += !c_.is_core(v);
  return d;
}

double SwapState::swap_delta(int u) const {
  const int d_peri = periphery_neighbors(u);
  if (c_.is_core(u)) {
    if (k_ == 1) return kInfeasible;
    return t_from(m_pp_ + d_peri, k_ - 1);
  }
  if (k_ == c_.size() - 1) return kInfeasible;
  return t_from(m_pp_ - d_peri, k_ + 1);
}

void SwapState::swap_apply(int u) {
  const int d_peri = periphery_neighbors(u);
  if (c_.is_core(u)) {
    if (k_ == 1) throw std::invalid_argument("swap_apply: infeasible swap");
    m_pp_ += d_peri;
    --k_;
    c_.set(u, false);
  } else {
    if (k_ == c_.size() - 1)
      throw std::invalid_argument("swap_apply: infeasible swap");
    m_pp_ -= d_peri;
    ++k_;
    c_.set(u, true);
  }
  t_ = t_from(m_pp_, k_);
}

}  // namespace cpnet

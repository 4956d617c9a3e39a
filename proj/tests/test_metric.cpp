#include <cmath>

#include "cpnet/metric.hpp"
#include "cpnet/models.hpp"
#include "cpnet/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpnet;

namespace {

const Graph& star4() {
  static const Graph g(4, {{0, 1}, {0, 2}, {0, 3}});
  return g;
}

const Graph& triangle_plus_one() {
  // Triangle 0-1-2 with a pendant edge 2-3 keeps the graph non-complete.
  static const Graph g(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  return g;
}

}  // namespace

TEST_CASE("t_sample: star graph with hub core is exactly 1") {
  CHECK(t_sample(star4(), LabelAssignment({1, 0, 0, 0})) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("t_sample: complement labeling matches the direct evaluation") {
  const LabelAssignment c({0, 1, 1, 1});
  CHECK(t_sample(star4(), c) ==
        doctest::Approx(oracles::t_direct(star4(), c)).epsilon(1e-12));
}

TEST_CASE("t_sample: random graphs match the direct double loop") {
  Rng rng(17);
  const auto s = sample(ModelSpec::erdos_renyi(50, 0.2), 5);
  for (int rep = 0; rep < 10; ++rep) {
    const auto c = oracles::random_labels_with_k(50, 10, rng);
    CHECK(t_sample(s.graph, c) ==
          doctest::Approx(oracles::t_direct(s.graph, c)).epsilon(1e-12));
  }
}

TEST_CASE("t_sample equals the Pearson correlation of the vectorized triangles") {
  Rng rng(23);
  const auto s = sample(ModelSpec::cp_sbm(18, 4, 0.7, 0.4, 0.1), 2);
  const auto c = oracles::random_labels_with_k(18, 5, rng);
  std::vector<double> a, d;
  for (int i = 0; i < 18; ++i)
    for (int j = i + 1; j < 18; ++j) {
      a.push_back(s.graph.has_edge(i, j) ? 1.0 : 0.0);
      d.push_back(oracles::delta_entry(c, i, j));
    }
  CHECK(t_sample(s.graph, c) ==
        doctest::Approx(oracles::pearson(a, d)).epsilon(1e-12));
}

TEST_CASE("t_sample: domain errors") {
  CHECK_THROWS_AS(t_sample(star4(), LabelAssignment(4, false)),
                  std::invalid_argument);
  CHECK_THROWS_AS(t_sample(star4(), LabelAssignment(4, true)),
                  std::invalid_argument);
  const Graph empty(4, {});
  CHECK_THROWS_AS(t_sample(empty, LabelAssignment({1, 0, 0, 0})),
                  std::invalid_argument);
  const Graph complete(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK_THROWS_AS(t_sample(complete, LabelAssignment({1, 0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(t_sample(star4(), LabelAssignment({1, 0, 0})),
                  std::invalid_argument);
}

TEST_CASE("|T| <= 1 wherever defined") {
  Rng rng(31);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto s = sample(ModelSpec::erdos_renyi(40, 0.3), seed);
    for (int rep = 0; rep < 10; ++rep) {
      const auto c = oracles::random_labels_with_k(
          40, 1 + static_cast<int>(rng.below(39)), rng);
      const double t = t_sample(s.graph, c);
      CHECK(std::abs(t) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("swap state init counts") {
  SwapState st(star4(), LabelAssignment({1, 0, 0, 0}));
  CHECK(st.core_size() == 1);
  CHECK(st.periphery_edge_count() == 0);
  CHECK(st.t() == doctest::Approx(1.0));

  CHECK_THROWS_AS(SwapState(star4(), LabelAssignment(4, false)),
                  std::invalid_argument);

  SwapState tri(triangle_plus_one(), LabelAssignment({1, 0, 0, 0}));
  CHECK(tri.periphery_edge_count() == 2);  // edges (1,2) and (2,3)
}

TEST_CASE("swap_delta: feasibility sentinel and hand example") {
  SwapState st(star4(), LabelAssignment({1, 0, 0, 0}));
  CHECK(st.swap_delta(0) == SwapState::kInfeasible);

  SwapState st2(star4(), LabelAssignment({1, 1, 0, 0}));
  CHECK(st2.swap_delta(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("swap_delta equals a full recompute over many random swaps") {
  const auto s = sample(ModelSpec::erdos_renyi(500, 0.05), 77);
  Rng rng(78);
  SwapState st(s.graph, oracles::random_labels_with_k(500, 120, rng));
  for (int step = 0; step < 1000; ++step) {
    const int u = static_cast<int>(rng.below(500));
    const double proposed = st.swap_delta(u);
    if (proposed == SwapState::kInfeasible) continue;
    LabelAssignment toggled = st.labels();
    toggled.toggle(u);
    CHECK(std::abs(proposed - t_sample(s.graph, toggled)) <= 1e-10);
    if (step % 3 != 0) st.swap_apply(u);  // drift the state around
  }
}

TEST_CASE("swap_apply: involution and re-init agreement") {
  const auto s = sample(ModelSpec::erdos_renyi(60, 0.15), 5);
  Rng rng(6);
  SwapState st(s.graph, oracles::random_labels_with_k(60, 20, rng));

  const double t0 = st.t();
  st.swap_apply(7);
  st.swap_apply(7);
  CHECK(st.t() == doctest::Approx(t0).epsilon(1e-12));

  for (int step = 0; step < 100; ++step) {
    const int u = static_cast<int>(rng.below(60));
    if (st.swap_delta(u) == SwapState::kInfeasible) continue;
    st.swap_apply(u);
  }
  SwapState fresh(s.graph, st.labels());
  CHECK(fresh.periphery_edge_count() == st.periphery_edge_count());
  CHECK(fresh.core_size() == st.core_size());
  CHECK(fresh.t() == doctest::Approx(st.t()).epsilon(1e-14));
}

TEST_CASE("swap_apply on an isolated node changes only the core size") {
  const Graph g(5, {{0, 1}, {0, 2}, {1, 2}});  // nodes 3, 4 isolated
  SwapState st(g, LabelAssignment({1, 0, 0, 0, 0}));
  const auto m_pp = st.periphery_edge_count();
  st.swap_apply(4);
  CHECK(st.periphery_edge_count() == m_pp);
  CHECK(st.core_size() == 2);
  CHECK(st.labels().is_core(4));

  CHECK_THROWS_AS([&] {
    SwapState one_core(g, LabelAssignment({1, 0, 0, 0, 0}));
    one_core.swap_apply(0);
  }(), std::invalid_argument);
}

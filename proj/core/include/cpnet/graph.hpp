// Immutable simple undirected graph (CSR adjacency) and edge-list I/O.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cpnet {

class Graph {
 public:
  // Edges may be given in any orientation but must be unique after
  // normalization and must not contain self-loops; endpoints in [0, n).
  // Throws std::invalid_argument otherwise. n >= 1.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  std::int64_t edge_count() const { return m_; }
  std::int64_t pair_count() const {
    return static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
  }

  int degree(int v) const {
    return static_cast<int>(off_[v + 1] - off_[v]);
  }
  std::span<const int> neighbors(int v) const {
    return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
  }
  bool has_edge(int u, int v) const;

  // Visits each edge once as (i, j) with i < j.
  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    for (int i = 0; i < n_; ++i) {
      for (std::int64_t p = off_[i]; p < off_[i + 1]; ++p) {
        const int j = adj_[p];
        if (j > i) fn(i, j);
      }
    }
  }

  bool operator==(const Graph& other) const = default;

 private:
  int n_;
  std::int64_t m_;
  std::vector<std::int64_t> off_;  // n_ + 1 offsets
  std::vector<int> adj_;           // 2m_ neighbor ids, each row sorted
};

struct IngestStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
  std::size_t edge_lines = 0;
};

struct IngestResult {
  Graph graph;
  // Dense index -> original token, in first-seen order.
  std::vector<std::string> node_ids;
  IngestStats stats;
};

// Parses "u v" edge lines (extra tokens ignored, '#' lines and blank lines
// skipped). Node ids are arbitrary strings mapped to dense [0, n) indices in
// first-seen order. Self-loops are dropped (counted), duplicate and reversed
// duplicate edges merged (counted). Throws std::runtime_error on a line with
// fewer than two tokens (message carries the line number) or if the input
// contains no edge lines at all.
IngestResult read_edge_list(std::istream& in);
IngestResult read_edge_list_file(const std::string& path);

// Writes one "u v" line per edge (i < j order). ids == nullptr uses the dense
// index itself as the id. With include_isolated, degree-0 nodes are emitted
// as "x x" self-loop lines, which the parser above drops while still
// registering the node, so ingest -> write -> ingest round-trips exactly.
void write_edge_list(const Graph& g, std::ostream& out,
                     const std::vector<std::string>* ids = nullptr,
                     bool include_isolated = false);

// 2m / n^2, the plug-in proxy for the sparsity factor.
double density(const Graph& g);

}  // namespace cpnet

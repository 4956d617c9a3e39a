#include "cpnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cpnet {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph: node count must be >= 1");
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("graph: endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");

  m_ = static_cast<std::int64_t>(edges.size());
  std::vector<std::int64_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  off_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) off_[i + 1] = off_[i] + deg[i];
  adj_.resize(2 * m_);
  std::vector<std::int64_t> cursor(off_.begin(), off_.end() - 1);
  for (const auto& [u, v] : edges) {
    adj_[cursor[u]++] = v;
    adj_[cursor[v]++] = u;
  }
  for (int i = 0; i < n; ++i)
    std::sort(adj_.begin() + off_[i], adj_.begin() + off_[i + 1]);
}

bool Graph::has_edge(int u, int v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

IngestResult read_edge_list(std::istream& in) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> ids;
  std::vector<std::pair<int, int>> edges;
  IngestStats stats;

  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = index.try_emplace(tok, static_cast<int>(ids.size()));
    if (inserted) ids.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string a, b;
    if (!(ss >> a)) continue;  // blank line
    if (a[0] == '#') continue;
    if (!(ss >> b)) {
      throw std::runtime_error("edge list: line " + std::to_string(line_no) +
                               ": expected two endpoint tokens");
    }
    ++stats.edge_lines;
    const int u = intern(a);
    const int v = intern(b);
    if (u == v) {
      ++stats.self_loops_dropped;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (stats.edge_lines == 0)
    throw std::runtime_error("edge list: empty input");

  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  stats.duplicates_merged = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  Graph g(static_cast<int>(ids.size()), std::move(edges));
  return IngestResult{std::move(g), std::move(ids), stats};
}

IngestResult read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out,
                     const std::vector<std::string>* ids,
                     bool include_isolated) {
  auto name = [&](int v) -> std::string {
    return ids ? (*ids)[v] : std::to_string(v);
  };
  g.for_each_edge([&](int i, int j) { out << name(i) << ' ' << name(j) << '\n'; });
  if (include_isolated) {
    for (int v = 0; v < g.node_count(); ++v)
      if (g.degree(v) == 0) out << name(v) << ' ' << name(v) << '\n';
  }
}

double density(const Graph& g) {
  const double n = static_cast<double>(g.node_count());
  return 2.0 * static_cast<double>(g.edge_count()) / (n * n);
}

}  // namespace cpnet

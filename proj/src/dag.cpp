#include "scord/dag.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace scord {

void validate_dag(const Dag& dag) {
  if (dag.d < 1) throw std::invalid_argument("dag: d must be >= 1");
  if (static_cast<int>(dag.topo.size()) != dag.d)
    throw std::invalid_argument("dag: topo must list every node once");
  std::vector<int> pos(dag.d, -1);
  for (int i = 0; i < dag.d; ++i) {
    const int v = dag.topo[i];
    if (v < 0 || v >= dag.d || pos[v] != -1)
      throw std::invalid_argument("dag: topo is not a permutation of the nodes");
    pos[v] = i;
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : dag.edges) {
    if (u < 0 || u >= dag.d || v < 0 || v >= dag.d)
      throw std::invalid_argument("dag: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("dag: self-loop");
    if (!seen.insert({u, v}).second) throw std::invalid_argument("dag: duplicate edge");
    if (pos[u] >= pos[v])
      throw std::invalid_argument("dag: topo violates edge " + std::to_string(u) +
                                  "->" + std::to_string(v));
  }
}

Dag generate_dag(int d, double edge_prob, Rng& rng) {
  if (d < 1) throw std::invalid_argument("generate_dag: d must be >= 1");
  if (!(edge_prob > 0.0) || edge_prob > 1.0)
    throw std::invalid_argument("generate_dag: edge_prob must be in (0, 1]");

  Dag dag;
  dag.d = d;
  dag.topo.resize(d);
  std::iota(dag.topo.begin(), dag.topo.end(), 0);
  rng.shuffle(dag.topo);

  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      if (rng.uniform() < edge_prob) dag.edges.emplace_back(dag.topo[a], dag.topo[b]);
    }
  }
  std::sort(dag.edges.begin(), dag.edges.end());
  return dag;
}

std::vector<int> topological_sort(int d, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> indegree(d, 0);
  std::vector<std::vector<int>> out(d);
  for (const auto& [u, v] : edges) {
    out[u].push_back(v);
    ++indegree[v];
  }
  std::set<int> ready;
  for (int i = 0; i < d; ++i)
    if (indegree[i] == 0) ready.insert(i);
  std::vector<int> topo;
  topo.reserve(d);
  while (!ready.empty()) {
    const int u = *ready.begin();
    ready.erase(ready.begin());
    topo.push_back(u);
    for (int v : out[u])
      if (--indegree[v] == 0) ready.insert(v);
  }
  if (static_cast<int>(topo.size()) != d)
    throw std::invalid_argument("topological_sort: graph has a cycle");
  return topo;
}

std::vector<std::vector<int>> parent_lists(const Dag& dag) {
  std::vector<std::vector<int>> pa(dag.d);
  for (const auto& [u, v] : dag.edges) pa[v].push_back(u);
  for (auto& p : pa) std::sort(p.begin(), p.end());
  return pa;
}

std::vector<std::vector<int>> child_lists(const Dag& dag) {
  std::vector<std::vector<int>> ch(dag.d);
  for (const auto& [u, v] : dag.edges) ch[u].push_back(v);
  for (auto& c : ch) std::sort(c.begin(), c.end());
  return ch;
}

}  // namespace scord

// Directed acyclic graphs and the Erdos-Renyi ensemble used for benchmarks.

#pragma once

#include <utility>
#include <vector>

#include "scord/rng.hpp"

namespace scord {

/// A DAG over nodes 0..d-1. `edges` are (parent, child) pairs and `topo` is
/// one valid topological order, root first.
struct Dag {
  int d = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> topo;
};

/// Throws std::invalid_argument if the edge list or topo order is inconsistent.
void validate_dag(const Dag& dag);

/// Erdos-Renyi DAG: a uniformly random permutation assigns node ranks and
/// each lower-rank -> higher-rank edge is included with probability
/// `edge_prob`. `topo` is the rank order.
Dag generate_dag(int d, double edge_prob, Rng& rng);

/// Kahn's algorithm with smallest-id tie-break; throws on cycles.
std::vector<int> topological_sort(int d, const std::vector<std::pair<int, int>>& edges);

std::vector<std::vector<int>> parent_lists(const Dag& dag);
std::vector<std::vector<int>> child_lists(const Dag& dag);

}  // namespace scord

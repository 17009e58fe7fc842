#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "scord/dag.hpp"

using namespace scord;

TEST_CASE("single node graph has no edges") {
  Rng rng(1);
  const Dag dag = generate_dag(1, 0.7, rng);
  CHECK(dag.d == 1);
  CHECK(dag.edges.empty());
  CHECK(dag.topo == std::vector<int>{0});
}

TEST_CASE("edge_prob 1 gives the complete DAG along the rank order") {
  Rng rng(5);
  const Dag dag = generate_dag(3, 1.0, rng);
  CHECK(dag.edges.size() == 3);
  validate_dag(dag);
  // every ordered pair consistent with topo must be present
  std::set<std::pair<int, int>> edges(dag.edges.begin(), dag.edges.end());
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) CHECK(edges.count({dag.topo[a], dag.topo[b]}) == 1);
}

TEST_CASE("edge count matches the binomial ensemble") {
  // d=20, p=0.2: 190 candidate pairs, mean 38; the mean over 1000 draws has
  // standard error sqrt(190*0.2*0.8/1000).
  Rng rng(7);
  double total = 0.0;
  const int draws = 1000;
  for (int i = 0; i < draws; ++i) total += generate_dag(20, 0.2, rng).edges.size();
  const double mean = total / draws;
  const double se = std::sqrt(190 * 0.2 * 0.8 / draws);
  CHECK(std::abs(mean - 38.0) <= 3.0 * se);
}

TEST_CASE("generated graphs validate and are deterministic per seed") {
  Rng a(123), b(123);
  const Dag da = generate_dag(15, 0.4, a);
  const Dag db = generate_dag(15, 0.4, b);
  validate_dag(da);
  CHECK(da.edges == db.edges);
  CHECK(da.topo == db.topo);
}

TEST_CASE("invalid arguments are rejected") {
  Rng rng(1);
  CHECK_THROWS_AS(generate_dag(0, 0.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(generate_dag(3, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(generate_dag(3, 1.5, rng), std::invalid_argument);
}

TEST_CASE("validate_dag catches structural defects") {
  Dag dag;
  dag.d = 2;
  dag.topo = {0, 1};
  dag.edges = {{0, 0}};
  CHECK_THROWS_AS(validate_dag(dag), std::invalid_argument);  // self-loop
  dag.edges = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(validate_dag(dag), std::invalid_argument);  // duplicate
  dag.edges = {{1, 0}};
  CHECK_THROWS_AS(validate_dag(dag), std::invalid_argument);  // against topo
  dag.edges = {{0, 2}};
  CHECK_THROWS_AS(validate_dag(dag), std::invalid_argument);  // out of range
}

TEST_CASE("topological_sort is deterministic and rejects cycles") {
  CHECK(topological_sort(3, {{2, 1}, {1, 0}}) == std::vector<int>{2, 1, 0});
  CHECK(topological_sort(3, {}) == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(topological_sort(2, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("parent and child lists mirror the edge set") {
  Dag dag;
  dag.d = 4;
  dag.topo = {0, 1, 2, 3};
  dag.edges = {{0, 2}, {1, 2}, {2, 3}};
  const auto pa = parent_lists(dag);
  const auto ch = child_lists(dag);
  CHECK(pa[2] == std::vector<int>{0, 1});
  CHECK(pa[0].empty());
  CHECK(ch[0] == std::vector<int>{2});
  CHECK(ch[2] == std::vector<int>{3});
  CHECK(ch[3].empty());
}

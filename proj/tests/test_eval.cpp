#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "scord/io.hpp"
#include "scord/metrics.hpp"
#include "scord/sweep.hpp"

using namespace scord;

namespace {

CausalGraph as_graph(const Dag& dag) { return {dag.d, dag.edges}; }

/// Independent SHD formulation: skeleton symmetric difference plus
/// orientation mismatches on the common skeleton.
int shd_by_skeletons(const CausalGraph& est, const Dag& truth) {
  std::set<std::pair<int, int>> e_dir(est.edges.begin(), est.edges.end());
  std::set<std::pair<int, int>> t_dir(truth.edges.begin(), truth.edges.end());
  std::set<std::pair<int, int>> e_skel, t_skel;
  for (const auto& [u, v] : e_dir) e_skel.insert({std::min(u, v), std::max(u, v)});
  for (const auto& [u, v] : t_dir) t_skel.insert({std::min(u, v), std::max(u, v)});
  int dist = 0;
  for (const auto& p : e_skel)
    if (!t_skel.count(p)) ++dist;
  for (const auto& p : t_skel)
    if (!e_skel.count(p)) ++dist;
  for (const auto& p : e_skel) {
    if (!t_skel.count(p)) continue;
    const bool same = (e_dir.count(p) && t_dir.count(p)) ||
                      (e_dir.count({p.second, p.first}) && t_dir.count({p.second, p.first}));
    if (!same) ++dist;
  }
  return dist;
}

}  // namespace

TEST_CASE("identical graphs have distance zero") {
  Rng rng(1);
  const Dag dag = generate_dag(6, 0.4, rng);
  CHECK(shd(as_graph(dag), dag) == 0);
}

TEST_CASE("a single reversed edge costs one") {
  Dag truth;
  truth.d = 2;
  truth.edges = {{0, 1}};
  truth.topo = {0, 1};
  CausalGraph est{2, {{1, 0}}};
  CHECK(shd(est, truth) == 1);
  CHECK(shd(CausalGraph{2, {}}, truth) == 1);           // deletion
  CHECK(shd(CausalGraph{2, {{0, 1}}}, truth) == 0);
}

TEST_CASE("shd matches the skeleton formulation on random pairs") {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Dag truth = generate_dag(5, 0.4, rng);
    const Dag other = generate_dag(5, 0.4, rng);
    const CausalGraph est = as_graph(other);
    CHECK(shd(est, truth) == shd_by_skeletons(est, truth));
  }
}

TEST_CASE("shd never exceeds the pair bound") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Dag truth = generate_dag(6, 0.5, rng);
    const Dag other = generate_dag(6, 0.5, rng);
    const int bound = 6 * 5 / 2 + static_cast<int>(truth.edges.size());
    CHECK(shd(as_graph(other), truth) <= bound);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  Dag truth;
  truth.d = 3;
  truth.topo = {0, 1, 2};
  CHECK_THROWS_AS(shd(CausalGraph{2, {}}, truth), std::invalid_argument);
}

TEST_CASE("sweeps are reproducible and order-stable under threading") {
  SweepConfig cfg;
  cfg.axis = SweepAxis::N;
  cfg.grid = {50, 100};
  cfg.d = 4;
  cfg.cm = 2.0;
  cfg.runs = 3;
  cfg.base_seed = 11;
  cfg.backend = SweepBackendChoice::Oracle;
  cfg.threads = 1;
  const SweepResult a = run_sweep(cfg);
  cfg.threads = 2;
  const SweepResult b = run_sweep(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].value == b.rows[i].value);
    CHECK(a.rows[i].seed == b.rows[i].seed);
    CHECK(a.rows[i].shd == b.rows[i].shd);
    CHECK(a.rows[i].order_div == b.rows[i].order_div);
    CHECK(a.rows[i].ok == b.rows[i].ok);
  }
  // rows arrive sorted by (value, seed)
  for (std::size_t i = 1; i < a.rows.size(); ++i) {
    const bool sorted = a.rows[i - 1].value < a.rows[i].value ||
                        (a.rows[i - 1].value == a.rows[i].value &&
                         a.rows[i - 1].seed < a.rows[i].seed);
    CHECK(sorted);
  }
}

TEST_CASE("summary statistics agree with a recomputation from the rows") {
  SweepConfig cfg;
  cfg.axis = SweepAxis::Cm;
  cfg.grid = {1.0, 4.0};
  cfg.d = 5;
  cfg.n = 80;
  cfg.runs = 4;
  cfg.base_seed = 3;
  cfg.backend = SweepBackendChoice::NoisyOracle;
  cfg.diag_noise = 2.0;
  const SweepResult res = run_sweep(cfg);
  for (const auto& s : res.summary) {
    double sum = 0.0;
    int count = 0;
    for (const auto& row : res.rows) {
      if (row.value != s.value || !row.ok) continue;
      sum += row.shd;
      ++count;
    }
    REQUIRE(count == s.runs_ok);
    const double mean = sum / count;
    CHECK(std::abs(mean - s.shd_mean) < 1e-12);
    double ss = 0.0;
    for (const auto& row : res.rows)
      if (row.value == s.value && row.ok) ss += (row.shd - mean) * (row.shd - mean);
    CHECK(std::abs(std::sqrt(ss / (count - 1)) - s.shd_std) < 1e-12);
  }
}

TEST_CASE("failed runs become error rows and the sweep continues") {
  SweepConfig cfg;
  cfg.axis = SweepAxis::D;
  cfg.grid = {2, 3};
  cfg.n = 30;
  cfg.runs = 2;
  cfg.base_seed = 7;
  cfg.backend = SweepBackendChoice::Net;
  cfg.net.dsm.eta = 100.0;  // guaranteed divergence
  cfg.net.dsm.epochs = 20;
  const SweepResult res = run_sweep(cfg);
  CHECK(res.rows.size() == 4);
  for (const auto& row : res.rows) {
    CHECK_FALSE(row.ok);
    CHECK(row.error.find("diverged") != std::string::npos);
  }
  for (const auto& s : res.summary) {
    CHECK(s.runs_ok == 0);
    CHECK(s.runs_failed == 2);
  }
  // error rows carry empty metric fields in the CSV
  const std::string csv = sweep_rows_to_csv(cfg, res.rows);
  CHECK(csv.find(",,,") != std::string::npos);
}

TEST_CASE("axis values route to the right parameter") {
  SweepConfig cfg;
  cfg.axis = SweepAxis::D;
  cfg.grid = {3, 6};
  cfg.n = 40;
  cfg.runs = 1;
  cfg.base_seed = 5;
  cfg.backend = SweepBackendChoice::Oracle;
  const SweepResult res = run_sweep(cfg);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].ok);
  CHECK(res.rows[1].ok);
  // d = 3 bounds shd by 3 pairs + edges; d = 6 allows more
  CHECK(res.rows[0].shd <= 3 + 3);
}

TEST_CASE("config validation names the problem") {
  SweepConfig cfg;
  cfg.grid = {};
  CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
  cfg.grid = {4.0, 2.0};
  CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
  cfg.grid = {1.0};
  cfg.runs = 0;
  CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}

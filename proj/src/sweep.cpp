#include "scord/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

#include "scord/metrics.hpp"

namespace scord {

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Cm: return "cm";
    case SweepAxis::N: return "n";
    case SweepAxis::D: return "d";
  }
  return "?";
}

void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.grid.empty()) throw std::invalid_argument("sweep: grid must be non-empty");
  for (std::size_t i = 1; i < cfg.grid.size(); ++i)
    if (!(cfg.grid[i] > cfg.grid[i - 1]))
      throw std::invalid_argument("sweep: grid must be strictly increasing");
  if (cfg.runs < 1) throw std::invalid_argument("sweep: runs must be >= 1");
  if (cfg.d < 1) throw std::invalid_argument("sweep: d must be >= 1");
  if (cfg.n < 2) throw std::invalid_argument("sweep: n must be >= 2");
  if (!(cfg.edge_prob > 0.0) || cfg.edge_prob > 1.0)
    throw std::invalid_argument("sweep: edge_prob must be in (0, 1]");
  if (cfg.threads < 1) throw std::invalid_argument("sweep: threads must be >= 1");
}

namespace {

SweepRow run_cell(const SweepConfig& cfg, double value, int run_index) {
  SweepRow row;
  row.value = value;
  row.seed = cfg.base_seed + static_cast<std::uint64_t>(run_index) * 10007ULL;
  const auto start = std::chrono::steady_clock::now();
  try {
    double cm = cfg.cm;
    int n = cfg.n;
    int d = cfg.d;
    switch (cfg.axis) {
      case SweepAxis::Cm: cm = value; break;
      case SweepAxis::N: n = static_cast<int>(value); break;
      case SweepAxis::D: d = static_cast<int>(value); break;
    }

    Rng scm_rng(derive_seed(row.seed, "scm"));
    const Dag dag = generate_dag(d, cfg.edge_prob, scm_rng);
    const Scm scm = build_scm(dag, cm, scm_rng, cfg.build);
    Rng noise_rng(derive_seed(row.seed, "noise"));
    const Dataset data = sample(scm, n, noise_rng);

    SweepBackendChoice choice = cfg.backend;
    if (choice == SweepBackendChoice::Auto)
      choice = (d <= cfg.net_autoswitch_d) ? SweepBackendChoice::Net
                                           : SweepBackendChoice::NoisyOracle;
    std::unique_ptr<ScoreBackend> backend;
    switch (choice) {
      case SweepBackendChoice::Oracle:
        backend = std::make_unique<OracleBackend>(scm);
        break;
      case SweepBackendChoice::NoisyOracle:
        backend = std::make_unique<NoisyOracleBackend>(scm, cfg.diag_noise);
        break;
      case SweepBackendChoice::Net:
        backend = std::make_unique<NetBackend>(cfg.net);
        break;
      case SweepBackendChoice::Auto: break;  // resolved above
    }

    Rng order_rng(derive_seed(row.seed, "order"));
    const OrderResult order = score_order(data, *backend, order_rng);
    Rng prune_rng(derive_seed(row.seed, "prune"));
    const CausalGraph est = prune(data, order.pi, *backend, cfg.prune, prune_rng);

    row.shd = shd(est, dag);
    row.order_div = order_divergence(order.pi, dag);
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  row.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  validate_sweep_config(cfg);

  struct Job {
    double value;
    int run_index;
  };
  std::vector<Job> jobs;
  for (double value : cfg.grid)
    for (int r = 0; r < cfg.runs; ++r) jobs.push_back({value, r});

  SweepResult result;
  result.rows.resize(jobs.size());

  const int workers =
      std::min<int>(cfg.threads, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      result.rows[i] = run_cell(cfg, jobs[i].value, jobs[i].run_index);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
        result.rows[i] = run_cell(cfg, jobs[i].value, jobs[i].run_index);
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (double value : cfg.grid) {
    SweepSummary s;
    s.value = value;
    double sum = 0.0;
    std::vector<int> shds;
    for (const auto& row : result.rows) {
      if (row.value != value) continue;
      if (row.ok) {
        shds.push_back(row.shd);
        sum += row.shd;
      } else {
        ++s.runs_failed;
      }
    }
    s.runs_ok = static_cast<int>(shds.size());
    if (s.runs_ok > 0) s.shd_mean = sum / s.runs_ok;
    if (s.runs_ok > 1) {
      double ss = 0.0;
      for (int v : shds) ss += (v - s.shd_mean) * (v - s.shd_mean);
      s.shd_std = std::sqrt(ss / (s.runs_ok - 1));
    }
    result.summary.push_back(s);
  }
  return result;
}

}  // namespace scord

// Multi-seed SHD sweeps over margin, sample count, or model size.
//
// Run i of every grid cell shares seed base_seed + i * 10007 so cells are
// paired on model randomness; rows are emitted sorted by (value, seed)
// regardless of completion order.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scord/order.hpp"

namespace scord {

enum class SweepAxis { Cm, N, D };
enum class SweepBackendChoice { Auto, Oracle, NoisyOracle, Net };

const char* axis_name(SweepAxis axis);

struct SweepConfig {
  SweepAxis axis = SweepAxis::Cm;
  std::vector<double> grid;  // strictly increasing axis values
  double cm = 1.0;           // fixed parameters (the swept one is ignored)
  int n = 100;
  int d = 10;
  double edge_prob = 0.3;
  int runs = 10;
  std::uint64_t base_seed = 1;
  SweepBackendChoice backend = SweepBackendChoice::Auto;
  double diag_noise = 3.0;  // nu of the noisy-oracle backend
  int net_autoswitch_d = 20;  // Auto uses the net backend up to this size
  NetConfig net;
  PruneConfig prune;
  BuildConfig build;
  int threads = 1;
};

struct SweepRow {
  double value = 0.0;
  std::uint64_t seed = 0;
  int shd = -1;
  int order_div = -1;
  double wall_time_s = 0.0;
  bool ok = false;
  std::string error;
};

struct SweepSummary {
  double value = 0.0;
  double shd_mean = 0.0;
  double shd_std = 0.0;
  int runs_ok = 0;
  int runs_failed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;
};

void validate_sweep_config(const SweepConfig& cfg);

SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace scord

// Topological order recovery by iterative leaf removal.
//
// Each round estimates the per-sample diagonal of the score Jacobian for the
// remaining variables; the column with the smallest sample variance is the
// current leaf (its diagonal entry is constant under the model), gets
// prepended to the order and its data column is dropped. Pruning replays the
// removal sequence and keeps edge i -> leaf when the leaf's Jacobian row
// varies along i.

#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <vector>

#include "scord/dsm.hpp"
#include "scord/scm.hpp"

namespace scord {

enum class BackendKind { Oracle, NoisyOracle, Net };

const char* backend_name(BackendKind kind);

/// Score-Jacobian estimates over a working dataset. Implementations must be
/// deterministic given the rng stream they are handed.
class ScoreBackend {
 public:
  virtual ~ScoreBackend() = default;
  virtual BackendKind kind() const = 0;

  /// n x k matrix: per-sample diagonal entries, one column per data column.
  virtual Eigen::MatrixXd jacobian_diagonals(const Dataset& data, Rng& rng) = 0;

  /// n x k matrix: per-sample entries of Jacobian row `row_col` (the current
  /// leaf), one column per remaining data column (including row_col itself).
  virtual Eigen::MatrixXd jacobian_rows(const Dataset& data, int row_col, Rng& rng) = 0;

  /// Variance contributed by the estimator itself, subtracted before
  /// thresholding in prune. Zero for exact backends.
  virtual double variance_offset() const { return 0.0; }

  /// Noise floor for prune's no-parent guard. `variances` are the offset-free
  /// column variances of a jacobian_rows call, `row_col` the leaf column.
  virtual double noise_floor(const Eigen::VectorXd& variances, int row_col,
                             int n) const = 0;
};

/// Exact analytic Jacobians of the model restricted to the remaining nodes.
class OracleBackend : public ScoreBackend {
 public:
  explicit OracleBackend(const Scm& scm) : scm_(&scm) {}
  BackendKind kind() const override { return BackendKind::Oracle; }
  Eigen::MatrixXd jacobian_diagonals(const Dataset& data, Rng& rng) override;
  Eigen::MatrixXd jacobian_rows(const Dataset& data, int row_col, Rng& rng) override;
  double noise_floor(const Eigen::VectorXd&, int, int) const override { return 1e-8; }

 private:
  const Scm* scm_;
};

/// Oracle Jacobians with i.i.d. N(0, nu^2) perturbation per entry, modelling a
/// score estimator whose error does not scale with the margin. Keeps large-d
/// sweeps at desk scale while the variance statistics behave like estimates.
class NoisyOracleBackend : public ScoreBackend {
 public:
  NoisyOracleBackend(const Scm& scm, double nu) : scm_(&scm), nu_(nu) {}
  BackendKind kind() const override { return BackendKind::NoisyOracle; }
  Eigen::MatrixXd jacobian_diagonals(const Dataset& data, Rng& rng) override;
  Eigen::MatrixXd jacobian_rows(const Dataset& data, int row_col, Rng& rng) override;
  double variance_offset() const override { return nu_ * nu_; }
  double noise_floor(const Eigen::VectorXd&, int, int n) const override {
    return nu_ * nu_ * std::sqrt(2.0 / std::max(n - 1, 1));
  }

 private:
  const Scm* scm_;
  double nu_;
};

struct NetConfig {
  int m = 128;
  int L = 3;
  DsmConfig dsm;
};

/// Trains a fresh ReLU network on the remaining columns at every call and
/// differentiates it exactly through the activation masks. Columns are
/// z-scored before training; a leaf's Jacobian diagonal is constant in any
/// affine reparameterization, so leaf selection and the parent test are
/// unaffected while the optimization sees unit-scale data.
class NetBackend : public ScoreBackend {
 public:
  explicit NetBackend(NetConfig cfg) : cfg_(cfg) {}
  BackendKind kind() const override { return BackendKind::Net; }
  Eigen::MatrixXd jacobian_diagonals(const Dataset& data, Rng& rng) override;
  Eigen::MatrixXd jacobian_rows(const Dataset& data, int row_col, Rng& rng) override;
  // The leaf's own diagonal should be constant, so its variance estimates the
  // network's estimation noise.
  double noise_floor(const Eigen::VectorXd& variances, int row_col, int) const override {
    return std::max(variances[row_col], 1e-12);
  }

 private:
  MlpParams train_on(const Dataset& data, Rng& rng) const;
  NetConfig cfg_;
};

struct OrderResult {
  std::vector<int> pi;  // root first; built leaf-first by prepending
  std::vector<std::map<int, double>> v_trace;  // per iteration: node -> V
  BackendKind backend = BackendKind::Oracle;
};

struct CausalGraph {
  int d = 0;
  std::vector<std::pair<int, int>> edges;  // (parent, child)
};

/// Unbiased per-column sample variance. Throws on fewer than two rows.
Eigen::VectorXd variance_stats(const Eigen::MatrixXd& jac_diags);

OrderResult score_order(const Dataset& data, ScoreBackend& backend, Rng& rng);

struct PruneConfig {
  double tau_rel = 0.1;  // relative variance threshold per candidate parent
};

/// Replays the leaf sequence of `pi` and emits edge i -> leaf when the leaf
/// row's variance along i clears both the estimator noise guard and the
/// relative threshold. Edges always point earlier -> later in pi.
CausalGraph prune(const Dataset& data, const std::vector<int>& pi,
                  ScoreBackend& backend, const PruneConfig& cfg, Rng& rng);

/// Number of true edges whose endpoints appear out of order in pi.
int order_divergence(const std::vector<int>& pi, const Dag& truth);

}  // namespace scord

#include "scord/order.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scord {

const char* backend_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::Oracle: return "oracle";
    case BackendKind::NoisyOracle: return "noisy-oracle";
    case BackendKind::Net: return "net";
  }
  return "?";
}

Eigen::MatrixXd OracleBackend::jacobian_diagonals(const Dataset& data, Rng&) {
  const Scm sub = restrict_to(*scm_, data.column_labels);
  Eigen::MatrixXd out(data.n(), data.d());
  for (int r = 0; r < data.n(); ++r)
    out.row(r) = analytic_jacobian_diag(sub, data.values.row(r).transpose()).transpose();
  return out;
}

Eigen::MatrixXd OracleBackend::jacobian_rows(const Dataset& data, int row_col, Rng&) {
  const Scm sub = restrict_to(*scm_, data.column_labels);
  Eigen::MatrixXd out(data.n(), data.d());
  for (int r = 0; r < data.n(); ++r)
    out.row(r) = analytic_jacobian(sub, data.values.row(r).transpose()).row(row_col);
  return out;
}

Eigen::MatrixXd NoisyOracleBackend::jacobian_diagonals(const Dataset& data, Rng& rng) {
  const Scm sub = restrict_to(*scm_, data.column_labels);
  Eigen::MatrixXd out(data.n(), data.d());
  for (int r = 0; r < data.n(); ++r) {
    out.row(r) = analytic_jacobian_diag(sub, data.values.row(r).transpose()).transpose();
    for (int c = 0; c < data.d(); ++c) out(r, c) += nu_ * rng.normal();
  }
  return out;
}

Eigen::MatrixXd NoisyOracleBackend::jacobian_rows(const Dataset& data, int row_col,
                                                  Rng& rng) {
  const Scm sub = restrict_to(*scm_, data.column_labels);
  Eigen::MatrixXd out(data.n(), data.d());
  for (int r = 0; r < data.n(); ++r) {
    out.row(r) = analytic_jacobian(sub, data.values.row(r).transpose()).row(row_col);
    for (int c = 0; c < data.d(); ++c) out(r, c) += nu_ * rng.normal();
  }
  return out;
}

namespace {

Dataset standardized(const Dataset& data) {
  Dataset out = data;
  for (int c = 0; c < out.d(); ++c) {
    const double mean = out.values.col(c).mean();
    double sd = std::sqrt((out.values.col(c).array() - mean).square().sum() /
                          std::max(out.n() - 1, 1));
    if (!(sd > 1e-12)) sd = 1.0;
    out.values.col(c) = (out.values.col(c).array() - mean) / sd;
  }
  return out;
}

}  // namespace

MlpParams NetBackend::train_on(const Dataset& data, Rng& rng) const {
  Rng init_rng(rng.bits());
  MlpParams p = mlp_init(data.d(), cfg_.m, cfg_.L, init_rng);
  DsmConfig dsm = cfg_.dsm;
  dsm.seed = rng.bits();
  auto [trained, report] = sgd_train(std::move(p), data, dsm);
  (void)report;
  return std::move(trained);
}

Eigen::MatrixXd NetBackend::jacobian_diagonals(const Dataset& data, Rng& rng) {
  const Dataset z = standardized(data);
  const MlpParams net = train_on(z, rng);
  Eigen::MatrixXd out(data.n(), data.d());
  ForwardCache cache;
  for (int r = 0; r < z.n(); ++r) {
    forward(net, z.values.row(r).transpose(), &cache);
    out.row(r) = jacobian_diag(net, cache).transpose();
  }
  return out;
}

Eigen::MatrixXd NetBackend::jacobian_rows(const Dataset& data, int row_col, Rng& rng) {
  const Dataset z = standardized(data);
  const MlpParams net = train_on(z, rng);
  Eigen::MatrixXd out(data.n(), data.d());
  ForwardCache cache;
  for (int r = 0; r < z.n(); ++r) {
    forward(net, z.values.row(r).transpose(), &cache);
    out.row(r) = jacobian_row(net, cache, row_col).transpose();
  }
  return out;
}

Eigen::VectorXd variance_stats(const Eigen::MatrixXd& jac_diags) {
  const int n = static_cast<int>(jac_diags.rows());
  if (n < 2) throw std::invalid_argument("variance_stats: need at least 2 samples");
  const Eigen::RowVectorXd mean = jac_diags.colwise().mean();
  return (jac_diags.rowwise() - mean).colwise().squaredNorm() / (n - 1);
}

OrderResult score_order(const Dataset& data, ScoreBackend& backend, Rng& rng) {
  if (data.d() < 1) throw std::invalid_argument("score_order: empty dataset");
  if (data.n() < 2) throw std::invalid_argument("score_order: need at least 2 samples");

  OrderResult result;
  result.backend = backend.kind();
  Dataset current = data;
  while (current.d() > 0) {
    const Eigen::VectorXd v = variance_stats(backend.jacobian_diagonals(current, rng));
    std::map<int, double> trace;
    for (int c = 0; c < current.d(); ++c) trace[current.column_labels[c]] = v[c];
    result.v_trace.push_back(std::move(trace));
    // strict < keeps the smallest label on ties (labels ascend)
    int pick = 0;
    for (int c = 1; c < current.d(); ++c)
      if (v[c] < v[pick]) pick = c;
    result.pi.insert(result.pi.begin(), current.column_labels[pick]);
    current = current.without_column(pick);
  }
  return result;
}

CausalGraph prune(const Dataset& data, const std::vector<int>& pi,
                  ScoreBackend& backend, const PruneConfig& cfg, Rng& rng) {
  if (!(cfg.tau_rel > 0.0) || cfg.tau_rel >= 1.0)
    throw std::invalid_argument("prune: tau_rel must be in (0, 1)");
  {
    std::vector<int> sorted_pi = pi;
    std::sort(sorted_pi.begin(), sorted_pi.end());
    std::vector<int> labels = data.column_labels;
    std::sort(labels.begin(), labels.end());
    if (sorted_pi != labels)
      throw std::invalid_argument("prune: pi is not a permutation of the data columns");
  }

  CausalGraph graph;
  graph.d = data.d();
  Dataset current = data;
  // Replay leaf-first: last entry of pi was removed first.
  for (int t = static_cast<int>(pi.size()) - 1; t >= 1; --t) {
    const int leaf = pi[t];
    const int col = current.column_of(leaf);
    const Eigen::MatrixXd rows = backend.jacobian_rows(current, col, rng);
    Eigen::VectorXd v = variance_stats(rows);
    const double offset = backend.variance_offset();
    Eigen::VectorXd excess =
        (v.array() - offset).max(0.0).matrix();
    const double floor = backend.noise_floor(v, col, current.n());
    const double guard = 10.0 * floor;

    double max_excess = 0.0;
    for (int c = 0; c < current.d(); ++c)
      if (c != col) max_excess = std::max(max_excess, excess[c]);

    // No candidate clears the guard: the leaf has no parents.
    if (max_excess >= guard) {
      for (int c = 0; c < current.d(); ++c) {
        if (c == col) continue;
        if (excess[c] >= guard || excess[c] >= cfg.tau_rel * max_excess)
          graph.edges.emplace_back(current.column_labels[c], leaf);
      }
    }
    current = current.without_column(col);
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  return graph;
}

int order_divergence(const std::vector<int>& pi, const Dag& truth) {
  if (static_cast<int>(pi.size()) != truth.d)
    throw std::invalid_argument("order_divergence: pi size does not match the graph");
  std::vector<int> pos(truth.d, -1);
  for (int i = 0; i < truth.d; ++i) {
    if (pi[i] < 0 || pi[i] >= truth.d || pos[pi[i]] != -1)
      throw std::invalid_argument("order_divergence: pi is not a permutation");
    pos[pi[i]] = i;
  }
  int count = 0;
  for (const auto& [u, v] : truth.edges)
    if (pos[u] > pos[v]) ++count;
  return count;
}

}  // namespace scord

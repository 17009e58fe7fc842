#include "scord/dsm.hpp"

#include <numeric>

namespace scord {

std::pair<double, std::vector<Eigen::MatrixXd>> dsm_sample_loss(
    const MlpParams& p, const Eigen::VectorXd& x, const Eigen::VectorXd& eps,
    double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("dsm_sample_loss: sigma must be > 0");
  const Eigen::VectorXd x_hat = x + eps;
  ForwardCache cache;
  const Eigen::VectorXd y = forward(p, x_hat, &cache);
  // residual against the conditional score target (x - x_hat)/sigma^2 = -eps/sigma^2
  const Eigen::VectorXd r = y + eps / (sigma * sigma);
  return {0.5 * r.squaredNorm(), backward(p, cache, r)};
}

namespace {

double mean_dsm_loss(const MlpParams& p, const Dataset& data, double sigma, Rng& rng) {
  double total = 0.0;
  Eigen::VectorXd eps(data.d());
  for (int r = 0; r < data.n(); ++r) {
    for (int c = 0; c < data.d(); ++c) eps[c] = sigma * rng.normal();
    const Eigen::VectorXd x_hat = data.values.row(r).transpose() + eps;
    total += 0.5 * (forward(p, x_hat) + eps / (sigma * sigma)).squaredNorm();
  }
  return total / data.n();
}

}  // namespace

std::pair<MlpParams, TrainReport> sgd_train(MlpParams p, const Dataset& data,
                                            const DsmConfig& cfg,
                                            const EsmEvaluator& esm_eval) {
  if (cfg.epochs < 1) throw std::invalid_argument("sgd_train: epochs must be >= 1");
  if (!(cfg.eta >= 0.0)) throw std::invalid_argument("sgd_train: eta must be >= 0");
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("sgd_train: sigma must be > 0");
  if (data.d() != p.dims.d_in)
    throw std::invalid_argument("sgd_train: data dimension does not match the network");
  if (data.n() < 1) throw std::invalid_argument("sgd_train: empty dataset");

  Rng rng(cfg.seed);
  const int n = data.n();
  const int d = data.d();

  // Fixed-noise mode draws one eps per sample up front.
  Eigen::MatrixXd fixed_eps;
  if (!cfg.resample_noise) {
    fixed_eps.resize(n, d);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < d; ++c) fixed_eps(r, c) = cfg.sigma * rng.normal();
  }

  TrainReport report;
  report.initial_loss = mean_dsm_loss(p, data, cfg.sigma, rng);
  const double divergence_limit = 1e6 * std::max(report.initial_loss, 1e-30);
  if (esm_eval && cfg.eval_every > 0)
    report.esm_checkpoints.emplace_back(0, esm_eval(p));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd eps(d);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (int idx : order) {
      if (cfg.resample_noise) {
        for (int c = 0; c < d; ++c) eps[c] = cfg.sigma * rng.normal();
      } else {
        eps = fixed_eps.row(idx).transpose();
      }
      auto [loss, grads] = dsm_sample_loss(p, data.values.row(idx).transpose(), eps,
                                           cfg.sigma);
      epoch_loss += loss;
      for (int l = 0; l < p.dims.L; ++l) p.weights[l] -= cfg.eta * grads[l];
    }
    epoch_loss /= n;
    report.epoch_loss.push_back(epoch_loss);
    if (!std::isfinite(epoch_loss) || epoch_loss > divergence_limit)
      throw TrainingDiverged(epoch, epoch_loss);
    if (esm_eval && cfg.eval_every > 0 &&
        (epoch % cfg.eval_every == 0 || epoch == cfg.epochs))
      report.esm_checkpoints.emplace_back(epoch, esm_eval(p));
  }
  return {std::move(p), std::move(report)};
}

double esm_error(const MlpParams& p, const Scm& scm, const Dataset& eval_points) {
  if (eval_points.d() != p.dims.d_in || eval_points.d() != scm.d())
    throw std::invalid_argument("esm_error: dimension mismatch");
  double total = 0.0;
  for (int r = 0; r < eval_points.n(); ++r) {
    const Eigen::VectorXd x = eval_points.values.row(r).transpose();
    total += 0.5 * (forward(p, x) - analytic_score(scm, x)).squaredNorm();
  }
  return total / eval_points.n();
}

}  // namespace scord

#include "scord/sgm.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scord {

void validate_schedule(const OuSchedule& sched) {
  if (!(sched.t0 > 0.0) || !(sched.T > sched.t0))
    throw std::invalid_argument("schedule: need 0 < t0 < T");
}

std::pair<double, double> transition_stats(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("transition_stats: t must be > 0");
  const double alpha = std::exp(-0.5 * t);
  return {alpha, 1.0 - alpha * alpha};
}

Eigen::VectorXd perturb(const Eigen::VectorXd& x0, double t, Rng& rng) {
  const auto [alpha, h] = transition_stats(t);
  const double sd = std::sqrt(h);
  Eigen::VectorXd x_t(x0.size());
  for (int i = 0; i < x0.size(); ++i) x_t[i] = alpha * x0[i] + sd * rng.normal();
  return x_t;
}

TimeNet time_net_init(int data_dim, int m, int L, Rng& rng) {
  if (data_dim < 1) throw std::invalid_argument("time_net_init: data_dim must be >= 1");
  return {mlp_init(data_dim + 1, m, L, rng), data_dim};
}

Eigen::VectorXd time_score(const TimeNet& tn, const Eigen::VectorXd& x, double t) {
  Eigen::VectorXd in(tn.data_dim + 1);
  in.head(tn.data_dim) = x;
  in[tn.data_dim] = t;
  return forward(tn.net, in).head(tn.data_dim);
}

std::pair<double, std::vector<Eigen::MatrixXd>> sgm_loss(const TimeNet& tn,
                                                         const Eigen::VectorXd& x0,
                                                         const OuSchedule& sched,
                                                         int k_times, Rng& rng) {
  validate_schedule(sched);
  if (k_times < 1) throw std::invalid_argument("sgm_loss: k_times must be >= 1");
  const int d = tn.data_dim;
  const int L = tn.net.dims.L;

  double loss = 0.0;
  std::vector<Eigen::MatrixXd> grads(L);
  for (int l = 0; l < L; ++l)
    grads[l] = Eigen::MatrixXd::Zero(tn.net.weights[l].rows(), tn.net.weights[l].cols());

  Eigen::VectorXd in(d + 1);
  Eigen::VectorXd grad_y = Eigen::VectorXd::Zero(d + 1);
  for (int k = 0; k < k_times; ++k) {
    const double t = rng.uniform(sched.t0, sched.T);
    const auto [alpha, h] = transition_stats(t);
    const double sd = std::sqrt(h);
    // x_t = alpha x0 + sqrt(h) z, target = -(x_t - alpha x0)/h = -z/sqrt(h)
    Eigen::VectorXd target(d);
    for (int i = 0; i < d; ++i) {
      const double z = rng.normal();
      in[i] = alpha * x0[i] + sd * z;
      target[i] = -z / sd;
    }
    in[d] = t;
    ForwardCache cache;
    const Eigen::VectorXd y = forward(tn.net, in, &cache);
    const Eigen::VectorXd r = y.head(d) - target;
    loss += r.squaredNorm() / k_times;
    grad_y.head(d) = 2.0 * r / k_times;
    const auto g = backward(tn.net, cache, grad_y);
    for (int l = 0; l < L; ++l) grads[l] += g[l];
  }
  return {loss, std::move(grads)};
}

std::pair<TimeNet, SgmTrainReport> train_sgm(TimeNet tn, const Dataset& data,
                                             const OuSchedule& sched,
                                             const SgmTrainConfig& cfg) {
  validate_schedule(sched);
  if (cfg.epochs < 1) throw std::invalid_argument("train_sgm: epochs must be >= 1");
  if (!(cfg.eta >= 0.0)) throw std::invalid_argument("train_sgm: eta must be >= 0");
  if (data.d() != tn.data_dim)
    throw std::invalid_argument("train_sgm: data dimension does not match the network");

  Rng rng(cfg.seed);
  SgmTrainReport report;
  const int n = data.n();
  const int L = tn.net.dims.L;

  double initial_loss = 0.0;
  for (int r = 0; r < n; ++r) {
    auto [loss, grads] =
        sgm_loss(tn, data.values.row(r).transpose(), sched, cfg.k_times, rng);
    initial_loss += loss;
  }
  initial_loss /= n;
  report.initial_loss = initial_loss;
  const double divergence_limit = 1e6 * std::max(initial_loss, 1e-30);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (int idx : order) {
      Eigen::VectorXd x0 = data.values.row(idx).transpose();
      if (cfg.clip_norm > 0.0 && x0.norm() > cfg.clip_norm) {
        x0 *= cfg.clip_norm / x0.norm();
        ++report.clip_events;
      }
      auto [loss, grads] = sgm_loss(tn, x0, sched, cfg.k_times, rng);
      epoch_loss += loss;
      for (int l = 0; l < L; ++l) tn.net.weights[l] -= cfg.eta * grads[l];
    }
    epoch_loss /= n;
    report.epoch_loss.push_back(epoch_loss);
    if (!std::isfinite(epoch_loss) || epoch_loss > divergence_limit)
      throw TrainingDiverged(epoch, epoch_loss);
  }
  return {std::move(tn), std::move(report)};
}

Eigen::MatrixXd reverse_sample(const ScoreFn& score, int d, const OuSchedule& sched,
                               int n_steps, int n_samples, Rng& rng) {
  validate_schedule(sched);
  if (n_steps < 1) throw std::invalid_argument("reverse_sample: n_steps must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("reverse_sample: n_samples must be >= 1");
  const double dt = (sched.T - sched.t0) / n_steps;
  const double sqrt_dt = std::sqrt(dt);
  Eigen::MatrixXd out(n_samples, d);
  Eigen::VectorXd x(d);
  for (int s = 0; s < n_samples; ++s) {
    for (int i = 0; i < d; ++i) x[i] = rng.normal();
    double t = sched.T;
    for (int step = 0; step < n_steps; ++step) {
      const Eigen::VectorXd drift = 0.5 * x + score(x, t);
      for (int i = 0; i < d; ++i) x[i] += drift[i] * dt + sqrt_dt * rng.normal();
      t -= dt;
    }
    out.row(s) = x.transpose();
  }
  return out;
}

Eigen::MatrixXd reverse_sample(const TimeNet& tn, const OuSchedule& sched, int n_steps,
                               int n_samples, Rng& rng) {
  return reverse_sample(
      [&tn](const Eigen::VectorXd& x, double t) { return time_score(tn, x, t); },
      tn.data_dim, sched, n_steps, n_samples, rng);
}

}  // namespace scord

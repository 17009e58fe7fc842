// Toy score-based generative modelling on an Ornstein-Uhlenbeck forward
// process. The transition kernel is Gaussian with alpha(t) = exp(-t/2) and
// h(t) = 1 - exp(-t); the time-integrated denoising loss draws uniform times
// in [t0, T] and the reverse SDE is integrated with Euler-Maruyama.

#pragma once

#include <Eigen/Dense>
#include <functional>

#include "scord/dsm.hpp"
#include "scord/mlp.hpp"
#include "scord/scm.hpp"

namespace scord {

struct OuSchedule {
  double t0 = 0.01;
  double T = 5.0;
};

void validate_schedule(const OuSchedule& sched);

/// (alpha, h) = (exp(-t/2), 1 - exp(-t)); alpha^2 + h == 1 identically.
std::pair<double, double> transition_stats(double t);

/// One draw of x_t ~ N(alpha(t) x0, h(t) I).
Eigen::VectorXd perturb(const Eigen::VectorXd& x0, double t, Rng& rng);

/// Score network over (x, t): an MLP on d+1 inputs with t appended as the
/// last coordinate. The extra output column is ignored.
struct TimeNet {
  MlpParams net;
  int data_dim = 0;
};

TimeNet time_net_init(int data_dim, int m, int L, Rng& rng);

Eigen::VectorXd time_score(const TimeNet& tn, const Eigen::VectorXd& x, double t);

/// Monte-Carlo estimate of the per-sample loss
///   1/(T-t0) * int_{t0}^{T} E || grad log p_{0t}(x_t | x0) - s(x_t, t) ||^2 dt
/// over k_times uniform time draws, with its weight gradients.
std::pair<double, std::vector<Eigen::MatrixXd>> sgm_loss(const TimeNet& tn,
                                                         const Eigen::VectorXd& x0,
                                                         const OuSchedule& sched,
                                                         int k_times, Rng& rng);

struct SgmTrainConfig {
  double eta = 1e-3;
  int epochs = 200;
  int k_times = 4;
  std::uint64_t seed = 0;
  double clip_norm = 0.0;  // > 0 clips inputs to this l2 norm (bounded-data hook)
};

struct SgmTrainReport {
  double initial_loss = 0.0;  // pre-training mean loss
  std::vector<double> epoch_loss;
  long clip_events = 0;
};

std::pair<TimeNet, SgmTrainReport> train_sgm(TimeNet tn, const Dataset& data,
                                             const OuSchedule& sched,
                                             const SgmTrainConfig& cfg);

using ScoreFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

/// Euler-Maruyama on the reverse SDE from t = T down to t0, starting at
/// N(0, I). Returns an n_samples x d matrix.
Eigen::MatrixXd reverse_sample(const ScoreFn& score, int d, const OuSchedule& sched,
                               int n_steps, int n_samples, Rng& rng);

Eigen::MatrixXd reverse_sample(const TimeNet& tn, const OuSchedule& sched, int n_steps,
                               int n_samples, Rng& rng);

}  // namespace scord

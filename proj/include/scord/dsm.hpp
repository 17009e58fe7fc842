// Denoising score matching objective and plain SGD training.
//
// A sample x is noised to x_hat = x + eps, eps ~ N(0, sigma^2 I), and the
// network regresses onto the conditional score (x - x_hat)/sigma^2. The
// explicit score matching error against the model oracle is tracked for
// evaluation only; training never touches second derivatives.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scord/mlp.hpp"
#include "scord/scm.hpp"

namespace scord {

struct DsmConfig {
  double sigma = 0.1;          // noise std of the DSM kernel
  double eta = 1e-3;           // SGD step size
  int epochs = 200;
  bool resample_noise = true;  // fresh eps per visit; false reuses per-sample noise
  int eval_every = 0;          // ESM checkpoint cadence in epochs, 0 = never
  std::uint64_t seed = 0;
};

struct TrainReport {
  double initial_loss = 0.0;                         // pre-training mean DSM loss
  std::vector<double> epoch_loss;                    // mean DSM loss per epoch
  std::vector<std::pair<int, double>> esm_checkpoints;  // (epoch, esm error)
};

class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(int epoch, double loss)
      : std::runtime_error("training diverged at epoch " + std::to_string(epoch) +
                           " (loss " + std::to_string(loss) + ")"),
        epoch(epoch) {}
  int epoch;
};

/// Loss 0.5 * || s(x + eps) + eps/sigma^2 ||^2 and its weight gradients.
/// The caller supplies eps explicitly so runs are reproducible.
std::pair<double, std::vector<Eigen::MatrixXd>> dsm_sample_loss(
    const MlpParams& p, const Eigen::VectorXd& x, const Eigen::VectorXd& eps,
    double sigma);

using EsmEvaluator = std::function<double(const MlpParams&)>;

/// Per-sample SGD over shuffled epochs. Aborts with TrainingDiverged when the
/// epoch loss exceeds 1e6 times the pre-training loss.
std::pair<MlpParams, TrainReport> sgd_train(MlpParams p, const Dataset& data,
                                            const DsmConfig& cfg,
                                            const EsmEvaluator& esm_eval = {});

/// Monte-Carlo ESM error 0.5 E || s(x) - grad log p(x) ||^2 over eval_points.
double esm_error(const MlpParams& p, const Scm& scm, const Dataset& eval_points);

}  // namespace scord

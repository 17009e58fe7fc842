// Non-linear additive Gaussian noise causal models.
//
// Each node i follows x_i = f_i(parents) + eps_i with eps_i ~ N(0, sigma_i^2).
// Mechanisms are sums of bounded sine terms, one per parent, whose amplitude
// is calibrated so every edge meets a requested curvature margin
// E[(d^2 f_i / d x_j^2)^2] >= C_m * sigma_i^2. The closed-form score of the
// joint density and its Jacobian serve as the ground-truth oracle.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scord/dag.hpp"
#include "scord/rng.hpp"

namespace scord {

/// Sine is the production family; Linear exists for degenerate-case tests
/// (zero curvature, the regime where leaf identification has no margin).
enum class MechanismForm { Sine, Linear };

/// Sine: f(pa) = amplitude * sum_k weights[k] * sin(weights[k] * pa[k]),
/// bounded by amplitude * sum_k |weights[k]|. Additively separable, so mixed
/// second partials vanish.
struct Mechanism {
  std::vector<int> parents;  // node indices of the owning model, ascending
  Eigen::VectorXd weights;   // one per parent
  double amplitude = 1.0;
  MechanismForm form = MechanismForm::Sine;

  double value(const Eigen::VectorXd& pa) const;
  /// d f / d pa_k at parent value xk.
  double partial(int k, double xk) const;
  /// d^2 f / d pa_k^2 at parent value xk.
  double second_partial(int k, double xk) const;
  /// The bound C_i = amplitude * sum |w| (infinite for Linear).
  double bound() const;
};

struct Scm {
  Dag dag;
  std::vector<Mechanism> mechanisms;  // per node; roots have no parents (f == 0)
  Eigen::VectorXd sigmas;
  double target_margin = 0.0;
  std::vector<std::vector<int>> children;  // cached from dag

  int d() const { return dag.d; }
};

/// Row-per-sample data matrix. `column_labels` keep the original node ids so
/// columns can be removed without losing identity.
struct Dataset {
  Eigen::MatrixXd values;  // n x d
  std::vector<int> column_labels;

  int n() const { return static_cast<int>(values.rows()); }
  int d() const { return static_cast<int>(values.cols()); }
  Dataset without_column(int col) const;
  /// Position of the column labelled `label`, or -1.
  int column_of(int label) const;
};

struct BuildConfig {
  double sigma_lo = 0.5;
  double sigma_hi = 1.5;
  int pilot_samples = 10000;  // MC budget for amplitude calibration
};

/// Draws sigmas and weights, then calibrates each amplitude in topological
/// order against pilot samples of the already-built ancestor prefix so the
/// per-edge margin meets `cm` under the model's own joint distribution.
Scm build_scm(const Dag& dag, double cm, Rng& rng, const BuildConfig& cfg = {});

/// Ancestral sampling of n rows.
Dataset sample(const Scm& scm, int n, Rng& rng);

double log_density(const Scm& scm, const Eigen::VectorXd& x);

/// Gradient of log_density at x.
Eigen::VectorXd analytic_score(const Scm& scm, const Eigen::VectorXd& x);

/// Full Hessian of log_density at x (the score Jacobian, symmetric).
Eigen::MatrixXd analytic_jacobian(const Scm& scm, const Eigen::VectorXd& x);

/// Diagonal of the score Jacobian; exactly -1/sigma_j^2 at leaves.
Eigen::VectorXd analytic_jacobian_diag(const Scm& scm, const Eigen::VectorXd& x);

struct EdgeMargin {
  int parent = 0;
  int child = 0;
  double margin = 0.0;     // E[(d^2 f_child / d x_parent^2)^2] / sigma_child^2
  double std_error = 0.0;  // MC standard error of `margin`
};

/// Monte-Carlo margin estimate per edge over n_mc fresh samples.
std::vector<EdgeMargin> estimate_margin(const Scm& scm, int n_mc, Rng& rng);

/// Sub-model induced by `nodes` (original ids, ascending). Exact whenever the
/// removed nodes are childless; otherwise their mechanism terms are dropped.
Scm restrict_to(const Scm& scm, const std::vector<int>& nodes);

}  // namespace scord

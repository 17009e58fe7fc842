// Bias-free deep ReLU network with Gaussian initialization.
//
// s_0 = x, s_l = relu(W_l s_{l-1}) for l < L, output W_L s_{L-1}. The cached
// 0/1 activation masks make the network piecewise linear, so the exact input
// Jacobian is the masked weight product W_L D_{L-1} W_{L-1} ... D_1 W_1.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scord/rng.hpp"

namespace scord {

struct MlpDims {
  int d_in = 0;
  int m = 0;
  int L = 0;
};

struct MlpParams {
  MlpDims dims;
  // weights[0] is m x d_in, weights[1..L-2] are m x m, weights[L-1] is d_in x m
  std::vector<Eigen::MatrixXd> weights;
};

struct ForwardCache {
  std::vector<Eigen::VectorXd> inputs;   // s_0 .. s_{L-1}
  std::vector<Eigen::VectorXd> preacts;  // W_l s_{l-1} for l = 1 .. L-1
  std::vector<Eigen::ArrayXd> masks;     // D_l entries, 1 where preact >= 0
};

/// Entries of W_1..W_{L-1} ~ N(0, 2/m), entries of W_L ~ N(0, 1/d_in).
MlpParams mlp_init(int d_in, int m, int L, Rng& rng);

void validate_params(const MlpParams& p);

Eigen::VectorXd forward(const MlpParams& p, const Eigen::VectorXd& x,
                        ForwardCache* cache = nullptr);

/// Exact Jacobian of the linear region recorded in `cache`.
Eigen::MatrixXd input_jacobian(const MlpParams& p, const ForwardCache& cache);

/// Row `row` of the input Jacobian via one reverse pass.
Eigen::VectorXd jacobian_row(const MlpParams& p, const ForwardCache& cache, int row);

/// Diagonal of the input Jacobian, d_in reverse passes over one cache.
Eigen::VectorXd jacobian_diag(const MlpParams& p, const ForwardCache& cache);

/// Gradients of <grad_y, forward(p, x)> with respect to every weight matrix.
std::vector<Eigen::MatrixXd> backward(const MlpParams& p, const ForwardCache& cache,
                                      const Eigen::VectorXd& grad_y);

/// Gradient of <grad_y, forward(p, x)> with respect to the input x.
Eigen::VectorXd input_gradient(const MlpParams& p, const ForwardCache& cache,
                               const Eigen::VectorXd& grad_y);

}  // namespace scord

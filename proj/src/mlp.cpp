#include "scord/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scord {

MlpParams mlp_init(int d_in, int m, int L, Rng& rng) {
  if (d_in < 1 || m < 1 || L < 2)
    throw std::invalid_argument("mlp_init: need d_in >= 1, m >= 1, L >= 2");
  MlpParams p;
  p.dims = {d_in, m, L};
  p.weights.reserve(L);
  const double hidden_sd = std::sqrt(2.0 / m);
  const double out_sd = std::sqrt(1.0 / d_in);
  for (int l = 0; l < L; ++l) {
    const int rows = (l == L - 1) ? d_in : m;
    const int cols = (l == 0) ? d_in : m;
    const double sd = (l == L - 1) ? out_sd : hidden_sd;
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) w(i, j) = sd * rng.normal();
    p.weights.push_back(std::move(w));
  }
  return p;
}

void validate_params(const MlpParams& p) {
  const auto& [d_in, m, L] = p.dims;
  if (d_in < 1 || m < 1 || L < 2) throw std::invalid_argument("mlp: bad dims");
  if (static_cast<int>(p.weights.size()) != L)
    throw std::invalid_argument("mlp: wrong layer count");
  for (int l = 0; l < L; ++l) {
    const int rows = (l == L - 1) ? d_in : m;
    const int cols = (l == 0) ? d_in : m;
    if (p.weights[l].rows() != rows || p.weights[l].cols() != cols)
      throw std::invalid_argument("mlp: weight shape mismatch at layer " +
                                  std::to_string(l + 1));
    if (!p.weights[l].allFinite())
      throw std::invalid_argument("mlp: non-finite weight at layer " + std::to_string(l + 1));
  }
}

Eigen::VectorXd forward(const MlpParams& p, const Eigen::VectorXd& x, ForwardCache* cache) {
  const int L = p.dims.L;
  if (x.size() != p.dims.d_in) throw std::invalid_argument("forward: input size mismatch");
  if (cache) {
    cache->inputs.assign(1, x);
    cache->preacts.clear();
    cache->masks.clear();
  }
  Eigen::VectorXd s = x;
  for (int l = 0; l < L - 1; ++l) {
    Eigen::VectorXd z = p.weights[l] * s;
    // Definition uses >= 0, so the kink itself counts as active.
    Eigen::ArrayXd mask = (z.array() >= 0.0).cast<double>();
    s = (z.array() * mask).matrix();
    if (cache) {
      cache->preacts.push_back(std::move(z));
      cache->masks.push_back(std::move(mask));
      cache->inputs.push_back(s);
    }
  }
  return p.weights[L - 1] * s;
}

Eigen::MatrixXd input_jacobian(const MlpParams& p, const ForwardCache& cache) {
  const int L = p.dims.L;
  Eigen::MatrixXd prod = cache.masks[0].matrix().asDiagonal() * p.weights[0];
  for (int l = 1; l < L - 1; ++l)
    prod = cache.masks[l].matrix().asDiagonal() * (p.weights[l] * prod);
  return p.weights[L - 1] * prod;
}

Eigen::VectorXd jacobian_row(const MlpParams& p, const ForwardCache& cache, int row) {
  const int L = p.dims.L;
  Eigen::VectorXd v = p.weights[L - 1].row(row).transpose();
  for (int l = L - 2; l >= 0; --l) {
    v.array() *= cache.masks[l];
    v = p.weights[l].transpose() * v;
  }
  return v;
}

Eigen::VectorXd jacobian_diag(const MlpParams& p, const ForwardCache& cache) {
  Eigen::VectorXd diag(p.dims.d_in);
  for (int j = 0; j < p.dims.d_in; ++j) diag[j] = jacobian_row(p, cache, j)[j];
  return diag;
}

std::vector<Eigen::MatrixXd> backward(const MlpParams& p, const ForwardCache& cache,
                                      const Eigen::VectorXd& grad_y) {
  const int L = p.dims.L;
  std::vector<Eigen::MatrixXd> grads(L);
  Eigen::VectorXd delta = grad_y;
  grads[L - 1] = delta * cache.inputs[L - 1].transpose();
  for (int l = L - 2; l >= 0; --l) {
    delta = (p.weights[l + 1].transpose() * delta).cwiseProduct(cache.masks[l].matrix());
    grads[l] = delta * cache.inputs[l].transpose();
  }
  return grads;
}

Eigen::VectorXd input_gradient(const MlpParams& p, const ForwardCache& cache,
                               const Eigen::VectorXd& grad_y) {
  const int L = p.dims.L;
  Eigen::VectorXd v = p.weights[L - 1].transpose() * grad_y;
  for (int l = L - 2; l >= 0; --l) {
    v.array() *= cache.masks[l];
    v = p.weights[l].transpose() * v;
  }
  return v;
}

}  // namespace scord

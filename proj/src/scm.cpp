#include "scord/scm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scord {

double Mechanism::value(const Eigen::VectorXd& pa) const {
  double s = 0.0;
  if (form == MechanismForm::Linear) {
    for (int k = 0; k < weights.size(); ++k) s += weights[k] * pa[k];
  } else {
    for (int k = 0; k < weights.size(); ++k)
      s += weights[k] * std::sin(weights[k] * pa[k]);
  }
  return amplitude * s;
}

double Mechanism::partial(int k, double xk) const {
  const double w = weights[k];
  if (form == MechanismForm::Linear) return amplitude * w;
  return amplitude * w * w * std::cos(w * xk);
}

double Mechanism::second_partial(int k, double xk) const {
  if (form == MechanismForm::Linear) return 0.0;
  const double w = weights[k];
  return -amplitude * w * w * w * std::sin(w * xk);
}

double Mechanism::bound() const {
  if (form == MechanismForm::Linear)
    return std::numeric_limits<double>::infinity();
  return amplitude * weights.cwiseAbs().sum();
}

Dataset Dataset::without_column(int col) const {
  Dataset out;
  const int nc = d();
  out.values.resize(values.rows(), nc - 1);
  out.column_labels.reserve(nc - 1);
  int j = 0;
  for (int c = 0; c < nc; ++c) {
    if (c == col) continue;
    out.values.col(j++) = values.col(c);
    out.column_labels.push_back(column_labels[c]);
  }
  return out;
}

int Dataset::column_of(int label) const {
  for (int c = 0; c < d(); ++c)
    if (column_labels[c] == label) return c;
  return -1;
}

namespace {

double mechanism_value_at(const Scm& scm, int i, const Eigen::VectorXd& x) {
  const Mechanism& m = scm.mechanisms[i];
  if (m.parents.empty()) return 0.0;
  Eigen::VectorXd pa(m.parents.size());
  for (std::size_t k = 0; k < m.parents.size(); ++k) pa[k] = x[m.parents[k]];
  return m.value(pa);
}

Eigen::VectorXd residuals(const Scm& scm, const Eigen::VectorXd& x) {
  Eigen::VectorXd eps(scm.d());
  for (int i = 0; i < scm.d(); ++i) eps[i] = x[i] - mechanism_value_at(scm, i, x);
  return eps;
}

}  // namespace

Scm build_scm(const Dag& dag, double cm, Rng& rng, const BuildConfig& cfg) {
  validate_dag(dag);
  if (cm < 0.0) throw std::invalid_argument("build_scm: cm must be >= 0");
  if (!(cfg.sigma_lo > 0.0) || cfg.sigma_lo > cfg.sigma_hi)
    throw std::invalid_argument("build_scm: need 0 < sigma_lo <= sigma_hi");
  if (cfg.pilot_samples < 100)
    throw std::invalid_argument("build_scm: pilot_samples must be >= 100");

  Scm scm;
  scm.dag = dag;
  scm.target_margin = cm;
  scm.children = child_lists(dag);

  scm.sigmas.resize(dag.d);
  for (int i = 0; i < dag.d; ++i) scm.sigmas[i] = rng.uniform(cfg.sigma_lo, cfg.sigma_hi);

  const auto parents = parent_lists(dag);
  scm.mechanisms.resize(dag.d);
  for (int i = 0; i < dag.d; ++i) {
    Mechanism& m = scm.mechanisms[i];
    m.parents = parents[i];
    m.weights.resize(m.parents.size());
    for (int k = 0; k < m.weights.size(); ++k) {
      const double mag = rng.uniform(0.5, 2.0);
      m.weights[k] = (rng.uniform() < 0.5) ? -mag : mag;
    }
  }

  // Calibrate amplitudes in topological order against pilot samples drawn
  // from the ancestor prefix, which is already final when node i is reached.
  const int np = cfg.pilot_samples;
  Eigen::MatrixXd pilot(np, dag.d);
  for (int i : dag.topo) {
    Mechanism& m = scm.mechanisms[i];
    if (!m.parents.empty()) {
      if (cm == 0.0) {
        m.amplitude = 1.0;
      } else {
        double g_min = std::numeric_limits<double>::infinity();
        for (int k = 0; k < m.weights.size(); ++k) {
          const double w = m.weights[k];
          const auto col = pilot.col(m.parents[k]).array();
          // E[(w^3 sin(w x))^2] with unit amplitude
          const double g = (std::pow(w, 6) * (w * col).sin().square()).mean();
          g_min = std::min(g_min, g);
        }
        m.amplitude = std::sqrt(cm * scm.sigmas[i] * scm.sigmas[i] / g_min);
      }
    }
    for (int r = 0; r < np; ++r)
      pilot(r, i) = mechanism_value_at(scm, i, pilot.row(r).transpose()) +
                    scm.sigmas[i] * rng.normal();
  }
  return scm;
}

Dataset sample(const Scm& scm, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  Dataset data;
  data.values.resize(n, scm.d());
  data.column_labels.resize(scm.d());
  for (int i = 0; i < scm.d(); ++i) data.column_labels[i] = i;
  for (int i : scm.dag.topo) {
    const Mechanism& m = scm.mechanisms[i];
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(n);
    for (int k = 0; k < m.weights.size(); ++k) {
      const double w = m.weights[k];
      const auto col = data.values.col(m.parents[k]).array();
      if (m.form == MechanismForm::Linear)
        acc += w * col;
      else
        acc += w * (w * col).sin();
    }
    acc *= m.amplitude;
    for (int r = 0; r < n; ++r) data.values(r, i) = acc[r] + scm.sigmas[i] * rng.normal();
  }
  return data;
}

double log_density(const Scm& scm, const Eigen::VectorXd& x) {
  const Eigen::VectorXd eps = residuals(scm, x);
  double lp = 0.0;
  for (int i = 0; i < scm.d(); ++i) {
    const double s2 = scm.sigmas[i] * scm.sigmas[i];
    lp += -0.5 * eps[i] * eps[i] / s2 - 0.5 * std::log(2.0 * M_PI * s2);
  }
  return lp;
}

Eigen::VectorXd analytic_score(const Scm& scm, const Eigen::VectorXd& x) {
  const Eigen::VectorXd eps = residuals(scm, x);
  Eigen::VectorXd s(scm.d());
  for (int j = 0; j < scm.d(); ++j)
    s[j] = -eps[j] / (scm.sigmas[j] * scm.sigmas[j]);
  for (int i = 0; i < scm.d(); ++i) {
    const Mechanism& m = scm.mechanisms[i];
    const double inv_s2 = 1.0 / (scm.sigmas[i] * scm.sigmas[i]);
    for (std::size_t k = 0; k < m.parents.size(); ++k) {
      const int j = m.parents[k];
      s[j] += m.partial(static_cast<int>(k), x[j]) * eps[i] * inv_s2;
    }
  }
  return s;
}

// log p(x) = sum_i -eps_i^2 / (2 sigma_i^2) + const with eps_i = x_i - f_i, so
// the Hessian is sum_i -(g_i g_i^T - eps_i H_i) / sigma_i^2 where
// g_i = e_i - grad f_i and H_i is the (diagonal) Hessian of f_i.
Eigen::MatrixXd analytic_jacobian(const Scm& scm, const Eigen::VectorXd& x) {
  const Eigen::VectorXd eps = residuals(scm, x);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(scm.d(), scm.d());
  for (int i = 0; i < scm.d(); ++i) {
    const Mechanism& m = scm.mechanisms[i];
    const double inv_s2 = 1.0 / (scm.sigmas[i] * scm.sigmas[i]);
    jac(i, i) -= inv_s2;
    const int np = static_cast<int>(m.parents.size());
    for (int k = 0; k < np; ++k) {
      const int j = m.parents[k];
      const double g_k = m.partial(k, x[j]);
      jac(i, j) += g_k * inv_s2;
      jac(j, i) += g_k * inv_s2;
      jac(j, j) += m.second_partial(k, x[j]) * eps[i] * inv_s2;
      for (int l = 0; l < np; ++l) {
        const int j2 = m.parents[l];
        jac(j, j2) -= g_k * m.partial(l, x[j2]) * inv_s2;
      }
    }
  }
  return jac;
}

Eigen::VectorXd analytic_jacobian_diag(const Scm& scm, const Eigen::VectorXd& x) {
  const Eigen::VectorXd eps = residuals(scm, x);
  Eigen::VectorXd diag(scm.d());
  for (int j = 0; j < scm.d(); ++j)
    diag[j] = -1.0 / (scm.sigmas[j] * scm.sigmas[j]);
  for (int i = 0; i < scm.d(); ++i) {
    const Mechanism& m = scm.mechanisms[i];
    const double inv_s2 = 1.0 / (scm.sigmas[i] * scm.sigmas[i]);
    for (std::size_t k = 0; k < m.parents.size(); ++k) {
      const int j = m.parents[k];
      const double g = m.partial(static_cast<int>(k), x[j]);
      diag[j] += (m.second_partial(static_cast<int>(k), x[j]) * eps[i] - g * g) * inv_s2;
    }
  }
  return diag;
}

std::vector<EdgeMargin> estimate_margin(const Scm& scm, int n_mc, Rng& rng) {
  if (n_mc < 100) throw std::invalid_argument("estimate_margin: n_mc must be >= 100");
  const Dataset data = sample(scm, n_mc, rng);
  std::vector<EdgeMargin> out;
  for (int i = 0; i < scm.d(); ++i) {
    const Mechanism& m = scm.mechanisms[i];
    const double s2 = scm.sigmas[i] * scm.sigmas[i];
    for (std::size_t k = 0; k < m.parents.size(); ++k) {
      const int j = m.parents[k];
      Eigen::ArrayXd h2(n_mc);
      for (int r = 0; r < n_mc; ++r) {
        const double h = m.second_partial(static_cast<int>(k), data.values(r, j));
        h2[r] = h * h;
      }
      const double mean = h2.mean();
      const double var = (h2 - mean).square().sum() / (n_mc - 1);
      out.push_back({j, i, mean / s2, std::sqrt(var / n_mc) / s2});
    }
  }
  return out;
}

Scm restrict_to(const Scm& scm, const std::vector<int>& nodes) {
  std::vector<int> local(scm.d(), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = static_cast<int>(k);

  Scm sub;
  sub.dag.d = static_cast<int>(nodes.size());
  sub.target_margin = scm.target_margin;
  for (const auto& [u, v] : scm.dag.edges)
    if (local[u] >= 0 && local[v] >= 0) sub.dag.edges.emplace_back(local[u], local[v]);
  for (int i : scm.dag.topo)
    if (local[i] >= 0) sub.dag.topo.push_back(local[i]);

  sub.sigmas.resize(sub.dag.d);
  sub.mechanisms.resize(sub.dag.d);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int i = nodes[k];
    sub.sigmas[k] = scm.sigmas[i];
    const Mechanism& m = scm.mechanisms[i];
    Mechanism& sm = sub.mechanisms[k];
    sm.amplitude = m.amplitude;
    sm.form = m.form;
    std::vector<double> kept;
    for (std::size_t p = 0; p < m.parents.size(); ++p) {
      if (local[m.parents[p]] >= 0) {
        sm.parents.push_back(local[m.parents[p]]);
        kept.push_back(m.weights[static_cast<int>(p)]);
      }
    }
    sm.weights = Eigen::Map<Eigen::VectorXd>(kept.data(), static_cast<int>(kept.size()));
  }
  sub.children = child_lists(sub.dag);
  return sub;
}

}  // namespace scord

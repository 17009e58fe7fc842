#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scord/sgm.hpp"
#include "test_util.hpp"

using namespace scord;
using testutil::rel_err;

namespace {

Dataset gaussian_dataset(int n, int d, double sd, Rng& rng) {
  Dataset data;
  data.values.resize(n, d);
  data.column_labels.resize(d);
  std::iota(data.column_labels.begin(), data.column_labels.end(), 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < d; ++c) data.values(r, c) = sd * rng.normal();
  return data;
}

}  // namespace

TEST_CASE("transition stats: limits, direct values, rejection of t <= 0") {
  const auto [a_small, h_small] = transition_stats(1e-12);
  CHECK(a_small == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(h_small == doctest::Approx(0.0).epsilon(1e-10));
  const auto [a1, h1] = transition_stats(1.0);
  CHECK(a1 == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(h1 == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(transition_stats(0.0), std::invalid_argument);
  CHECK_THROWS_AS(transition_stats(-1.0), std::invalid_argument);
}

TEST_CASE("kernel identity alpha^2 + h == 1 at machine precision") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double t = rng.uniform(1e-6, 50.0);
    const auto [alpha, h] = transition_stats(t);
    CHECK(std::abs(alpha * alpha + h - 1.0) <= 4.5e-16);
  }
}

TEST_CASE("perturbation moments match the kernel") {
  Eigen::VectorXd x0(2);
  x0 << 1.5, -2.0;
  const double t = 10.0;
  const auto [alpha, h] = transition_stats(t);
  Rng rng(2);
  const int n = 100000;
  Eigen::MatrixXd draws(n, 2);
  for (int r = 0; r < n; ++r) draws.row(r) = perturb(x0, t, rng).transpose();
  const Eigen::RowVectorXd mean = draws.colwise().mean();
  CHECK(std::abs(mean[0] - alpha * x0[0]) < 0.01);
  CHECK(std::abs(mean[1] - alpha * x0[1]) < 0.01);
  const Eigen::MatrixXd centered = draws.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / (n - 1);
  CHECK(std::abs(cov(0, 0) - h) < 3.0 * h * std::sqrt(2.0 / n));
  CHECK(std::abs(cov(1, 1) - h) < 3.0 * h * std::sqrt(2.0 / n));
  CHECK(std::abs(cov(0, 1)) < 3.0 * h / std::sqrt(n));
}

TEST_CASE("large times reach the standard Gaussian and x0 = 0 gives N(0, h I)") {
  Rng rng(3);
  Eigen::VectorXd x0(1);
  x0 << 3.0;
  const int n = 50000;
  double mean = 0.0, sq = 0.0;
  for (int r = 0; r < n; ++r) {
    const double v = perturb(x0, 40.0, rng)[0];
    mean += v / n;
    sq += v * v / n;
  }
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(sq - 1.0) < 0.03);

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  const auto [alpha, h] = transition_stats(0.5);
  mean = sq = 0.0;
  for (int r = 0; r < n; ++r) {
    const double v = perturb(zero, 0.5, rng)[0];
    mean += v / n;
    sq += v * v / n;
  }
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(sq - h) < 0.03);
}

TEST_CASE("zero network loss matches the quadrature of d/h(t)") {
  Rng rng(4);
  TimeNet tn = time_net_init(3, 16, 3, rng);
  tn.net.weights[2].setZero();
  const OuSchedule sched{0.01, 5.0};
  // E[loss] = (1/(T-t0)) int d/h(t) dt for the zero network
  const int panels = 20000;
  const double step = (sched.T - sched.t0) / panels;
  double integral = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double t = sched.t0 + i * step;
    const double weight = (i == 0 || i == panels) ? 0.5 : 1.0;
    integral += weight * 3.0 / (1.0 - std::exp(-t)) * step;
  }
  const double expected = integral / (sched.T - sched.t0);

  Eigen::VectorXd x0(3);
  x0 << 0.4, -1.0, 0.2;
  Rng noise(5);
  double mc = 0.0;
  const int reps = 40000;
  for (int i = 0; i < reps; ++i) mc += sgm_loss(tn, x0, sched, 1, noise).first / reps;
  CHECK(std::abs(mc - expected) / expected < 0.05);
}

TEST_CASE("sgm loss gradients match finite differences") {
  Rng rng(6);
  const TimeNet tn0 = time_net_init(2, 24, 3, rng);
  const OuSchedule sched{0.05, 3.0};
  Eigen::VectorXd x0(2);
  x0 << 0.7, -0.4;
  const std::uint64_t eval_seed = 99;
  const auto loss_of = [&](const TimeNet& tn) {
    Rng fixed(eval_seed);
    return sgm_loss(tn, x0, sched, 3, fixed).first;
  };
  Rng fixed(eval_seed);
  const auto [loss, grads] = sgm_loss(tn0, x0, sched, 3, fixed);
  const double h = 1e-6;
  for (int dir = 0; dir < 15; ++dir) {
    TimeNet plus = tn0, minus = tn0;
    double dot = 0.0;
    for (int l = 0; l < tn0.net.dims.L; ++l) {
      Eigen::MatrixXd v(tn0.net.weights[l].rows(), tn0.net.weights[l].cols());
      for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < v.cols(); ++j) v(i, j) = rng.uniform(-1.0, 1.0);
      plus.net.weights[l] += h * v;
      minus.net.weights[l] -= h * v;
      dot += (grads[l].array() * v.array()).sum();
    }
    CHECK(rel_err((loss_of(plus) - loss_of(minus)) / (2.0 * h), dot) < 1e-5);
  }
}

TEST_CASE("a collapsed time window reduces to the single-time loss") {
  Rng rng(7);
  const TimeNet tn = time_net_init(2, 16, 3, rng);
  const OuSchedule sched{0.999999999, 1.000000001};
  Eigen::VectorXd x0(2);
  x0 << 0.3, 0.9;
  Rng a(8);
  const double got = sgm_loss(tn, x0, sched, 1, a).first;
  // replay the same draws by hand at the effectively fixed time
  Rng b(8);
  const double t = b.uniform(sched.t0, sched.T);
  const auto [alpha, h] = transition_stats(t);
  Eigen::VectorXd x_t(2), target(2);
  for (int i = 0; i < 2; ++i) {
    const double z = b.normal();
    x_t[i] = alpha * x0[i] + std::sqrt(h) * z;
    target[i] = -z / std::sqrt(h);
  }
  const double expected = (time_score(tn, x_t, t) - target).squaredNorm();
  CHECK(rel_err(got, expected) < 1e-9);
}

TEST_CASE("zero step size trains nothing; the loss trace otherwise decreases") {
  Rng rng(9);
  const Dataset data = gaussian_dataset(120, 2, 1.0, rng);
  const OuSchedule sched{0.01, 5.0};
  TimeNet tn = time_net_init(2, 32, 3, rng);
  SgmTrainConfig frozen;
  frozen.eta = 0.0;
  frozen.epochs = 2;
  frozen.seed = 10;
  const auto [same, report0] = train_sgm(tn, data, sched, frozen);
  for (int l = 0; l < 3; ++l) CHECK(same.net.weights[l] == tn.net.weights[l]);

  SgmTrainConfig cfg;
  cfg.epochs = 25;
  cfg.seed = 11;
  const auto [trained, report] = train_sgm(tn, data, sched, cfg);
  double tail = 0.0;
  for (int i = 15; i < 25; ++i) tail += report.epoch_loss[i] / 10.0;
  CHECK(tail < report.initial_loss);
}

TEST_CASE("bounded-data hook clips and counts") {
  Rng rng(12);
  Dataset data = gaussian_dataset(50, 2, 1.0, rng);
  data.values(0, 0) = 100.0;  // one far outlier
  const OuSchedule sched{0.01, 3.0};
  TimeNet tn = time_net_init(2, 16, 3, rng);
  SgmTrainConfig cfg;
  cfg.epochs = 2;
  cfg.seed = 13;
  cfg.clip_norm = 5.0;
  const auto [trained, report] = train_sgm(tn, data, sched, cfg);
  CHECK(report.clip_events >= 2);  // once per epoch
}

TEST_CASE("reverse sampling from the stationary score stays standard normal") {
  const OuSchedule sched{0.01, 5.0};
  Rng rng(14);
  const auto score = [](const Eigen::VectorXd& x, double) { return (-x).eval(); };
  const Eigen::MatrixXd draws = reverse_sample(score, 2, sched, 200, 4000, rng);
  const Eigen::RowVectorXd mean = draws.colwise().mean();
  CHECK(mean.cwiseAbs().maxCoeff() < 0.1);
  const Eigen::MatrixXd centered = draws.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / (draws.rows() - 1);
  CHECK(std::abs(cov(0, 0) - 1.0) < 0.1);
  CHECK(std::abs(cov(1, 1) - 1.0) < 0.1);
  CHECK(std::abs(cov(0, 1)) < 0.1);
}

TEST_CASE("reverse sampling recovers a shrunken Gaussian") {
  const double s2 = 0.25;
  const OuSchedule sched{0.01, 5.0};
  const auto score = [&](const Eigen::VectorXd& x, double t) {
    const auto [alpha, h] = transition_stats(t);
    return (-x / (s2 * alpha * alpha + h)).eval();
  };
  Rng rng(15);
  const Eigen::MatrixXd draws = reverse_sample(score, 2, sched, 500, 4000, rng);
  const Eigen::RowVectorXd mean = draws.colwise().mean();
  const Eigen::MatrixXd centered = draws.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / (draws.rows() - 1);
  CHECK(std::abs(cov(0, 0) - s2) < 0.15);
  CHECK(std::abs(cov(1, 1) - s2) < 0.15);
  CHECK(std::abs(cov(0, 1)) < 0.15);
}

TEST_CASE("a single reverse step still returns finite samples") {
  const OuSchedule sched{0.01, 5.0};
  Rng rng(16);
  const auto score = [](const Eigen::VectorXd& x, double) { return (-x).eval(); };
  const Eigen::MatrixXd draws = reverse_sample(score, 3, sched, 1, 10, rng);
  CHECK(draws.rows() == 10);
  CHECK(draws.allFinite());
}

TEST_CASE("reverse sampling is deterministic in the seed") {
  const OuSchedule sched{0.01, 2.0};
  const auto score = [](const Eigen::VectorXd& x, double) { return (-x).eval(); };
  Rng a(17), b(17);
  const Eigen::MatrixXd da = reverse_sample(score, 2, sched, 50, 20, a);
  const Eigen::MatrixXd db = reverse_sample(score, 2, sched, 50, 20, b);
  CHECK(da == db);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(validate_schedule({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_schedule({2.0, 1.0}), std::invalid_argument);
  Rng rng(18);
  const TimeNet tn = time_net_init(2, 8, 2, rng);
  Eigen::VectorXd x0(2);
  x0 << 0.0, 0.0;
  CHECK_THROWS_AS(sgm_loss(tn, x0, {0.1, 2.0}, 0, rng), std::invalid_argument);
}

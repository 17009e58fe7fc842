#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scord/io.hpp"
#include "test_util.hpp"

using namespace scord;

TEST_CASE("scm json round-trips byte-exactly") {
  Rng rng(1);
  const Dag dag = generate_dag(7, 0.4, rng);
  const Scm scm = build_scm(dag, 3.0, rng);
  const std::string text = scm_to_json(scm);
  const Scm loaded = scm_from_json(text);
  CHECK(scm_to_json(loaded) == text);
  CHECK(loaded.sigmas == scm.sigmas);
  CHECK(loaded.dag.edges == scm.dag.edges);
  for (int i = 0; i < scm.d(); ++i) {
    CHECK(loaded.mechanisms[i].parents == scm.mechanisms[i].parents);
    CHECK(loaded.mechanisms[i].weights == scm.mechanisms[i].weights);
    CHECK(loaded.mechanisms[i].amplitude == scm.mechanisms[i].amplitude);
  }
}

TEST_CASE("dataset csv keeps full precision and survives column removal") {
  Rng rng(2);
  const Scm scm = build_scm(generate_dag(4, 0.5, rng), 1.0, rng);
  Rng noise(3);
  const Dataset data = sample(scm, 25, noise);
  const Dataset trimmed = data.without_column(1);
  CHECK(trimmed.column_labels == std::vector<int>{0, 2, 3});

  const std::string csv = dataset_to_csv(trimmed);
  CHECK(csv.rfind("x1,x3,x4\n", 0) == 0);
  const Dataset loaded = dataset_from_csv(csv);
  CHECK(loaded.column_labels == trimmed.column_labels);
  CHECK(loaded.values == trimmed.values);
}

TEST_CASE("dataset csv rejects malformed input") {
  CHECK_THROWS(dataset_from_csv(""));
  CHECK_THROWS(dataset_from_csv("a,b\n1,2\n"));
  CHECK_THROWS(dataset_from_csv("x1,x2\n1.0\n"));
}

TEST_CASE("checkpoints round-trip and validate shapes") {
  Rng rng(4);
  const MlpParams p = mlp_init(3, 8, 3, rng);
  const std::string text = checkpoint_to_json(p);
  const MlpParams loaded = checkpoint_from_json(text);
  for (int l = 0; l < 3; ++l) CHECK(loaded.weights[l] == p.weights[l]);

  std::string corrupt = text;
  const auto pos = corrupt.find("\"m\":8");
  REQUIRE(pos != std::string::npos);
  corrupt.replace(pos, 5, "\"m\":9");
  CHECK_THROWS_AS(checkpoint_from_json(corrupt), std::invalid_argument);
  CHECK_THROWS(checkpoint_from_json("{\"format\":\"other\"}"));
}

TEST_CASE("time-net checkpoints carry the schedule") {
  Rng rng(5);
  const TimeNet tn = time_net_init(2, 8, 3, rng);
  const OuSchedule sched{0.02, 4.0};
  const std::string text = time_net_to_json(tn, sched);
  const auto [loaded, loaded_sched] = time_net_from_json(text);
  CHECK(loaded.data_dim == 2);
  CHECK(loaded_sched.t0 == sched.t0);
  CHECK(loaded_sched.T == sched.T);
  for (int l = 0; l < 3; ++l) CHECK(loaded.net.weights[l] == tn.net.weights[l]);
}

TEST_CASE("order results round-trip with 1-based node ids") {
  OrderResult res;
  res.pi = {2, 0, 1};
  res.v_trace = {{{0, 0.5}, {1, 0.25}, {2, 1.5}}, {{0, 0.1}, {2, 0.8}}, {{2, 0.0}}};
  res.backend = BackendKind::NoisyOracle;
  const std::string text = order_result_to_json(res);
  CHECK(text.find("\"3\"") != std::string::npos);
  const OrderResult loaded = order_result_from_json(text);
  CHECK(loaded.pi == res.pi);
  CHECK(loaded.v_trace == res.v_trace);
  CHECK(loaded.backend == res.backend);
}

TEST_CASE("edge lists round-trip through csv") {
  CausalGraph g{4, {{0, 2}, {2, 3}}};
  const std::string csv = graph_to_csv(g);
  CHECK(csv == "src,dst\n1,3\n3,4\n");
  const CausalGraph loaded = graph_from_csv(csv, 4);
  CHECK(loaded.edges == g.edges);
  CHECK_THROWS(graph_from_csv("nope\n", 4));
}

TEST_CASE("train report csv leaves missing esm entries blank") {
  TrainReport report;
  report.epoch_loss = {2.0, 1.0, 0.5};
  report.esm_checkpoints = {{0, 9.0}, {2, 4.0}};
  const std::string csv = train_report_to_csv(report);
  CHECK(csv == "epoch,dsm_loss,esm_error\n0,,9\n1,2,\n2,1,4\n3,0.5,\n");
}

TEST_CASE("sweep csv headers follow the declared schema") {
  SweepConfig cfg;
  cfg.axis = SweepAxis::N;
  cfg.grid = {10};
  std::vector<SweepRow> rows(1);
  rows[0] = {10.0, 42, 3, 1, 0.25, true, ""};
  const std::string raw = sweep_rows_to_csv(cfg, rows);
  CHECK(raw.rfind("axis,value,seed,shd,order_div,wall_time_s\n", 0) == 0);
  CHECK(raw.find("n,10,42,3,1,0.250000") != std::string::npos);
  std::vector<SweepSummary> summary(1);
  summary[0] = {10.0, 3.0, 0.0, 1, 0};
  const std::string sum = sweep_summary_to_csv(cfg, summary);
  CHECK(sum.rfind("axis,value,shd_mean,shd_std,runs_ok,runs_failed\n", 0) == 0);
  CHECK(sum.find("n,10,3,0,1,0") != std::string::npos);
}

TEST_CASE("format_double survives a parse round-trip bit-exactly") {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform_int(-12, 12));
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("file helpers write and read back") {
  const auto dir = std::filesystem::temp_directory_path() / "scord_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "t.txt";
  write_text_file(path, "hello\n");
  CHECK(read_text_file(path) == "hello\n");
  CHECK_THROWS(read_text_file(dir / "missing.txt"));
  std::filesystem::remove_all(dir);
}

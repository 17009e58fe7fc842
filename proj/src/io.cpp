#include "scord/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scord {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scm_to_json(const Scm& scm) {
  json j;
  j["d"] = scm.d();
  json edges = json::array();
  for (const auto& [u, v] : scm.dag.edges) edges.push_back({u + 1, v + 1});
  j["edges"] = edges;
  j["sigmas"] = std::vector<double>(scm.sigmas.begin(), scm.sigmas.end());
  json mechs = json::array();
  for (const auto& m : scm.mechanisms) {
    if (m.form != MechanismForm::Sine)
      throw std::invalid_argument("scm json: only the sine family is serializable");
    json jm;
    json parents = json::array();
    for (int p : m.parents) parents.push_back(p + 1);
    jm["parents"] = parents;
    jm["weights"] = std::vector<double>(m.weights.begin(), m.weights.end());
    jm["amplitude"] = m.amplitude;
    mechs.push_back(jm);
  }
  j["mechanisms"] = mechs;
  j["target_margin"] = scm.target_margin;
  return j.dump(2) + "\n";
}

Scm scm_from_json(const std::string& text) {
  const json j = json::parse(text);
  Scm scm;
  scm.dag.d = j.at("d").get<int>();
  for (const auto& e : j.at("edges"))
    scm.dag.edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
  scm.dag.topo = topological_sort(scm.dag.d, scm.dag.edges);
  const auto sigmas = j.at("sigmas").get<std::vector<double>>();
  scm.sigmas = Eigen::Map<const Eigen::VectorXd>(sigmas.data(), sigmas.size());
  for (const auto& jm : j.at("mechanisms")) {
    Mechanism m;
    for (const auto& p : jm.at("parents")) m.parents.push_back(p.get<int>() - 1);
    const auto w = jm.at("weights").get<std::vector<double>>();
    m.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    if (m.weights.size() != static_cast<int>(m.parents.size()))
      throw std::invalid_argument("scm json: weights/parents length mismatch");
    m.amplitude = jm.at("amplitude").get<double>();
    scm.mechanisms.push_back(std::move(m));
  }
  scm.target_margin = j.at("target_margin").get<double>();
  if (static_cast<int>(scm.mechanisms.size()) != scm.dag.d ||
      scm.sigmas.size() != scm.dag.d)
    throw std::invalid_argument("scm json: inconsistent sizes");
  validate_dag(scm.dag);
  scm.children = child_lists(scm.dag);
  return scm;
}

void save_scm(const Scm& scm, const std::filesystem::path& path) {
  write_text_file(path, scm_to_json(scm));
}

Scm load_scm(const std::filesystem::path& path) {
  return scm_from_json(read_text_file(path));
}

std::string dataset_to_csv(const Dataset& data) {
  std::string out;
  for (int c = 0; c < data.d(); ++c) {
    if (c) out += ',';
    out += "x" + std::to_string(data.column_labels[c] + 1);
  }
  out += '\n';
  for (int r = 0; r < data.n(); ++r) {
    for (int c = 0; c < data.d(); ++c) {
      if (c) out += ',';
      out += format_double(data.values(r, c));
    }
    out += '\n';
  }
  return out;
}

Dataset dataset_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("dataset csv: empty file");
  Dataset data;
  {
    std::istringstream head(line);
    std::string cell;
    while (std::getline(head, cell, ',')) {
      if (cell.empty() || cell[0] != 'x')
        throw std::invalid_argument("dataset csv: bad header cell '" + cell + "'");
      data.column_labels.push_back(std::stoi(cell.substr(1)) - 1);
    }
  }
  const int d = static_cast<int>(data.column_labels.size());
  std::vector<double> values;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    int cols = 0;
    while (std::getline(row, cell, ',')) {
      values.push_back(std::stod(cell));
      ++cols;
    }
    if (cols != d) throw std::invalid_argument("dataset csv: ragged row");
    ++rows;
  }
  data.values = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                         Eigen::RowMajor>>(values.data(), rows, d);
  return data;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
  write_text_file(path, dataset_to_csv(data));
}

Dataset load_dataset(const std::filesystem::path& path) {
  return dataset_from_csv(read_text_file(path));
}

namespace {

json weights_to_json(const MlpParams& p) {
  json layers = json::array();
  for (const auto& w : p.weights) {
    std::vector<double> flat;  // row-major
    flat.reserve(w.size());
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) flat.push_back(w(i, j));
    layers.push_back(flat);
  }
  return layers;
}

MlpParams weights_from_json(const json& j) {
  MlpParams p;
  p.dims.d_in = j.at("d_in").get<int>();
  p.dims.m = j.at("m").get<int>();
  p.dims.L = j.at("L").get<int>();
  const auto& layers = j.at("weights");
  if (static_cast<int>(layers.size()) != p.dims.L)
    throw std::invalid_argument("checkpoint: layer count mismatch");
  for (int l = 0; l < p.dims.L; ++l) {
    const int rows = (l == p.dims.L - 1) ? p.dims.d_in : p.dims.m;
    const int cols = (l == 0) ? p.dims.d_in : p.dims.m;
    const auto flat = layers[l].get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != rows * cols)
      throw std::invalid_argument("checkpoint: layer " + std::to_string(l + 1) +
                                  " has wrong size");
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int c = 0; c < cols; ++c) w(i, c) = flat[i * cols + c];
    p.weights.push_back(std::move(w));
  }
  validate_params(p);
  return p;
}

}  // namespace

std::string checkpoint_to_json(const MlpParams& p) {
  json j;
  j["format"] = "scord-mlp-v1";
  j["d_in"] = p.dims.d_in;
  j["m"] = p.dims.m;
  j["L"] = p.dims.L;
  j["weights"] = weights_to_json(p);
  return j.dump() + "\n";
}

MlpParams checkpoint_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("format").get<std::string>() != "scord-mlp-v1")
    throw std::invalid_argument("checkpoint: unknown format tag");
  return weights_from_json(j);
}

void save_checkpoint(const MlpParams& p, const std::filesystem::path& path) {
  write_text_file(path, checkpoint_to_json(p));
}

MlpParams load_checkpoint(const std::filesystem::path& path) {
  return checkpoint_from_json(read_text_file(path));
}

std::string time_net_to_json(const TimeNet& tn, const OuSchedule& sched) {
  json j;
  j["format"] = "scord-sgm-v1";
  j["data_dim"] = tn.data_dim;
  j["t0"] = sched.t0;
  j["T"] = sched.T;
  j["d_in"] = tn.net.dims.d_in;
  j["m"] = tn.net.dims.m;
  j["L"] = tn.net.dims.L;
  j["weights"] = weights_to_json(tn.net);
  return j.dump() + "\n";
}

std::pair<TimeNet, OuSchedule> time_net_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("format").get<std::string>() != "scord-sgm-v1")
    throw std::invalid_argument("sgm checkpoint: unknown format tag");
  TimeNet tn;
  tn.data_dim = j.at("data_dim").get<int>();
  tn.net = weights_from_json(j);
  if (tn.net.dims.d_in != tn.data_dim + 1)
    throw std::invalid_argument("sgm checkpoint: d_in must be data_dim + 1");
  OuSchedule sched{j.at("t0").get<double>(), j.at("T").get<double>()};
  validate_schedule(sched);
  return {std::move(tn), sched};
}

void save_time_net(const TimeNet& tn, const OuSchedule& sched,
                   const std::filesystem::path& path) {
  write_text_file(path, time_net_to_json(tn, sched));
}

std::pair<TimeNet, OuSchedule> load_time_net(const std::filesystem::path& path) {
  return time_net_from_json(read_text_file(path));
}

std::string order_result_to_json(const OrderResult& result) {
  json j;
  json pi = json::array();
  for (int v : result.pi) pi.push_back(v + 1);
  j["pi"] = pi;
  json trace = json::array();
  for (const auto& step : result.v_trace) {
    json entry = json::object();
    for (const auto& [node, v] : step) entry[std::to_string(node + 1)] = v;
    trace.push_back(entry);
  }
  j["v_trace"] = trace;
  j["backend"] = backend_name(result.backend);
  return j.dump(2) + "\n";
}

OrderResult order_result_from_json(const std::string& text) {
  const json j = json::parse(text);
  OrderResult result;
  for (const auto& v : j.at("pi")) result.pi.push_back(v.get<int>() - 1);
  for (const auto& step : j.at("v_trace")) {
    std::map<int, double> entry;
    for (const auto& [key, value] : step.items())
      entry[std::stoi(key) - 1] = value.get<double>();
    result.v_trace.push_back(std::move(entry));
  }
  const std::string backend = j.at("backend").get<std::string>();
  if (backend == "oracle") result.backend = BackendKind::Oracle;
  else if (backend == "noisy-oracle") result.backend = BackendKind::NoisyOracle;
  else if (backend == "net") result.backend = BackendKind::Net;
  else throw std::invalid_argument("order json: unknown backend '" + backend + "'");
  return result;
}

std::string graph_to_csv(const CausalGraph& graph) {
  std::string out = "src,dst\n";
  for (const auto& [u, v] : graph.edges)
    out += std::to_string(u + 1) + "," + std::to_string(v + 1) + "\n";
  return out;
}

CausalGraph graph_from_csv(const std::string& text, int d) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "src,dst")
    throw std::invalid_argument("graph csv: missing 'src,dst' header");
  CausalGraph graph;
  graph.d = d;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("graph csv: bad row");
    graph.edges.emplace_back(std::stoi(line.substr(0, comma)) - 1,
                             std::stoi(line.substr(comma + 1)) - 1);
  }
  return graph;
}

std::string train_report_to_csv(const TrainReport& report) {
  std::string out = "epoch,dsm_loss,esm_error\n";
  std::map<int, double> esm(report.esm_checkpoints.begin(),
                            report.esm_checkpoints.end());
  if (esm.count(0))
    out += "0,," + format_double(esm.at(0)) + "\n";
  for (std::size_t e = 0; e < report.epoch_loss.size(); ++e) {
    const int epoch = static_cast<int>(e) + 1;
    out += std::to_string(epoch) + "," + format_double(report.epoch_loss[e]) + ",";
    if (esm.count(epoch)) out += format_double(esm.at(epoch));
    out += "\n";
  }
  return out;
}

std::string sweep_rows_to_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  std::string out = "axis,value,seed,shd,order_div,wall_time_s\n";
  char wall[32];
  for (const auto& row : rows) {
    std::snprintf(wall, sizeof(wall), "%.6f", row.wall_time_s);
    out += std::string(axis_name(cfg.axis)) + "," + format_double(row.value) + "," +
           std::to_string(row.seed) + ",";
    if (row.ok)
      out += std::to_string(row.shd) + "," + std::to_string(row.order_div);
    else
      out += ",";
    out += std::string(",") + wall + "\n";
  }
  return out;
}

std::string sweep_summary_to_csv(const SweepConfig& cfg,
                                 const std::vector<SweepSummary>& summary) {
  std::string out = "axis,value,shd_mean,shd_std,runs_ok,runs_failed\n";
  for (const auto& s : summary) {
    out += std::string(axis_name(cfg.axis)) + "," + format_double(s.value) + "," +
           format_double(s.shd_mean) + "," + format_double(s.shd_std) + "," +
           std::to_string(s.runs_ok) + "," + std::to_string(s.runs_failed) + "\n";
  }
  return out;
}

std::string schedule_sidecar_json(const OuSchedule& sched, int n_steps) {
  json j;
  j["t0"] = sched.t0;
  j["T"] = sched.T;
  j["n_steps"] = n_steps;
  return j.dump(2) + "\n";
}

}  // namespace scord

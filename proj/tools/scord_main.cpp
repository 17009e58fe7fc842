// scord: score-matching causal discovery from the command line.
//
// Subcommands: generate, train-score, order, prune, sweep, sgm-train,
// sgm-sample. Every run is a pure function of its flags, input files and
// --seed; named sub-streams (scm, noise, init, order, prune) are derived from
// the one user-visible seed. Config precedence: flags > --config JSON >
// built-in defaults. Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "scord/dsm.hpp"
#include "scord/io.hpp"
#include "scord/metrics.hpp"
#include "scord/order.hpp"
#include "scord/scm.hpp"
#include "scord/sgm.hpp"
#include "scord/sweep.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Shared {
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string config;
  bool verbose = false;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  return json::parse(scord::read_text_file(path));
}

// flags > config file > defaults
template <class T>
void merge(const CLI::App& cmd, const json& cfg, const std::string& flag,
           const std::string& key, T& var) {
  if (cmd.count(flag) == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

fs::path out_dir(const Shared& shared) {
  fs::path dir(shared.out);
  fs::create_directories(dir);
  return dir;
}

void echo_config(const Shared& shared, const json& effective) {
  if (shared.verbose) std::cerr << "config: " << effective.dump() << "\n";
}

scord::SweepBackendChoice parse_backend(const std::string& name) {
  if (name == "auto") return scord::SweepBackendChoice::Auto;
  if (name == "oracle") return scord::SweepBackendChoice::Oracle;
  if (name == "noisy-oracle") return scord::SweepBackendChoice::NoisyOracle;
  if (name == "net") return scord::SweepBackendChoice::Net;
  throw CLI::ValidationError("--backend", "unknown backend '" + name + "'");
}

std::unique_ptr<scord::ScoreBackend> make_backend(const std::string& name,
                                                  const scord::Scm* scm,
                                                  double diag_noise,
                                                  const scord::NetConfig& net) {
  const auto choice = parse_backend(name);
  switch (choice) {
    case scord::SweepBackendChoice::Oracle:
      if (!scm) throw CLI::ValidationError("--scm", "the oracle backend needs --scm");
      return std::make_unique<scord::OracleBackend>(*scm);
    case scord::SweepBackendChoice::NoisyOracle:
      if (!scm)
        throw CLI::ValidationError("--scm", "the noisy-oracle backend needs --scm");
      return std::make_unique<scord::NoisyOracleBackend>(*scm, diag_noise);
    case scord::SweepBackendChoice::Net:
      return std::make_unique<scord::NetBackend>(net);
    default:
      throw CLI::ValidationError("--backend", "auto is only valid for sweep");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"score-matching causal discovery toolkit"};
  app.require_subcommand(1);

  Shared shared;
  app.add_option("--seed", shared.seed, "global seed; all randomness derives from it")
      ->capture_default_str();
  app.add_option("--out", shared.out, "output directory")->capture_default_str();
  app.add_option("--config", shared.config, "JSON config file (flags win)");
  app.add_flag("--verbose", shared.verbose, "echo the effective config to stderr");

  // ---- generate ----------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "draw a random SCM and sample data");
  gen->fallthrough();
  int gen_d = 10;
  double gen_p = 0.3, gen_cm = 1.0, gen_slo = 0.5, gen_shi = 1.5;
  int gen_n = 100, gen_pilot = 10000;
  gen->add_option("--d", gen_d, "node count")->check(CLI::Range(1, 100000))
      ->capture_default_str();
  gen->add_option("--edge-prob", gen_p, "edge probability")
      ->check(CLI::Range(1e-12, 1.0))->capture_default_str();
  gen->add_option("--cm", gen_cm, "identifiability margin")
      ->check(CLI::Range(0.0, 1e18))->capture_default_str();
  gen->add_option("--sigma-lo", gen_slo, "noise std lower bound")
      ->check(CLI::Range(1e-12, 1e6))->capture_default_str();
  gen->add_option("--sigma-hi", gen_shi, "noise std upper bound")
      ->check(CLI::Range(1e-12, 1e6))->capture_default_str();
  gen->add_option("--n", gen_n, "sample count")->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  gen->add_option("--pilot-samples", gen_pilot, "MC budget for margin calibration")
      ->check(CLI::Range(100, 100000000))->capture_default_str();

  // ---- train-score -------------------------------------------------------
  auto* train = app.add_subcommand("train-score", "fit a score network by DSM");
  train->fallthrough();
  std::string train_data, train_scm;
  int train_m = 128, train_L = 3, train_epochs = 200, train_eval_every = 0;
  double train_eta = 1e-3, train_sigma = 0.1;
  bool train_fixed_noise = false;
  train->add_option("--data", train_data, "dataset CSV")->required();
  train->add_option("--scm", train_scm, "model JSON for ESM checkpoints");
  train->add_option("--m", train_m, "hidden width")->check(CLI::Range(1, 100000))
      ->capture_default_str();
  train->add_option("--L", train_L, "depth")->check(CLI::Range(2, 100))
      ->capture_default_str();
  train->add_option("--eta", train_eta, "SGD step size")
      ->check(CLI::Range(0.0, 1e6))->capture_default_str();
  train->add_option("--epochs", train_epochs, "epochs")->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  train->add_option("--sigma", train_sigma, "DSM noise std")
      ->check(CLI::Range(1e-12, 1e6))->capture_default_str();
  train->add_option("--eval-every", train_eval_every,
                    "ESM checkpoint cadence in epochs (needs --scm)")
      ->check(CLI::Range(0, 10000000))->capture_default_str();
  train->add_flag("--fixed-noise", train_fixed_noise,
                  "reuse one noise draw per sample instead of resampling");

  // ---- order -------------------------------------------------------------
  auto* ord = app.add_subcommand("order", "recover a topological order");
  ord->fallthrough();
  std::string ord_data, ord_scm, ord_backend = "net";
  double ord_noise = 3.0;
  int ord_m = 128, ord_L = 3, ord_epochs = 200;
  double ord_eta = 1e-3, ord_sigma = 0.1;
  ord->add_option("--data", ord_data, "dataset CSV")->required();
  ord->add_option("--backend", ord_backend, "oracle | noisy-oracle | net")
      ->capture_default_str();
  ord->add_option("--scm", ord_scm, "model JSON (oracle backends)");
  ord->add_option("--diag-noise", ord_noise, "noisy-oracle perturbation std")
      ->check(CLI::Range(0.0, 1e6))->capture_default_str();
  ord->add_option("--m", ord_m, "net width")->capture_default_str();
  ord->add_option("--L", ord_L, "net depth")->capture_default_str();
  ord->add_option("--eta", ord_eta, "net step size")->capture_default_str();
  ord->add_option("--epochs", ord_epochs, "net epochs")->capture_default_str();
  ord->add_option("--sigma", ord_sigma, "net DSM noise std")->capture_default_str();

  // ---- prune -------------------------------------------------------------
  auto* pru = app.add_subcommand("prune", "prune the full DAG of an order");
  pru->fallthrough();
  std::string pru_data, pru_order, pru_scm, pru_backend = "net";
  double pru_noise = 3.0, pru_tau = 0.1;
  int pru_m = 128, pru_L = 3, pru_epochs = 200;
  double pru_eta = 1e-3, pru_sigma = 0.1;
  pru->add_option("--data", pru_data, "dataset CSV")->required();
  pru->add_option("--order", pru_order, "order JSON from the order command")->required();
  pru->add_option("--backend", pru_backend, "oracle | noisy-oracle | net")
      ->capture_default_str();
  pru->add_option("--scm", pru_scm, "model JSON (oracle backends)");
  pru->add_option("--diag-noise", pru_noise, "noisy-oracle perturbation std")
      ->capture_default_str();
  pru->add_option("--tau-rel", pru_tau, "relative variance threshold")
      ->check(CLI::Range(1e-9, 0.999999))->capture_default_str();
  pru->add_option("--m", pru_m, "net width")->capture_default_str();
  pru->add_option("--L", pru_L, "net depth")->capture_default_str();
  pru->add_option("--eta", pru_eta, "net step size")->capture_default_str();
  pru->add_option("--epochs", pru_epochs, "net epochs")->capture_default_str();
  pru->add_option("--sigma", pru_sigma, "net DSM noise std")->capture_default_str();

  // ---- sweep -------------------------------------------------------------
  auto* swe = app.add_subcommand("sweep", "multi-seed SHD sweep over cm, n or d");
  swe->fallthrough();
  std::string swe_axis = "cm", swe_backend = "auto";
  std::vector<double> swe_grid;
  int swe_d = 10, swe_n = 100, swe_runs = 10, swe_threads = 1;
  double swe_cm = 1.0, swe_p = 0.3, swe_noise = 3.0, swe_tau = 0.1;
  int swe_m = 128, swe_L = 3, swe_epochs = 200;
  double swe_eta = 1e-3, swe_sigma = 0.1;
  swe->add_option("--axis", swe_axis, "cm | n | d")->capture_default_str();
  swe->add_option("--grid", swe_grid, "axis values, strictly increasing")
      ->required()->delimiter(',');
  swe->add_option("--d", swe_d, "fixed node count")->capture_default_str();
  swe->add_option("--n", swe_n, "fixed sample count")->capture_default_str();
  swe->add_option("--cm", swe_cm, "fixed margin")->capture_default_str();
  swe->add_option("--edge-prob", swe_p, "edge probability")->capture_default_str();
  swe->add_option("--runs", swe_runs, "runs per grid value")
      ->check(CLI::Range(1, 100000))->capture_default_str();
  swe->add_option("--backend", swe_backend, "auto | oracle | noisy-oracle | net")
      ->capture_default_str();
  swe->add_option("--diag-noise", swe_noise, "noisy-oracle perturbation std")
      ->capture_default_str();
  swe->add_option("--tau-rel", swe_tau, "prune threshold")->capture_default_str();
  swe->add_option("--threads", swe_threads, "worker threads")
      ->check(CLI::Range(1, 1024))->capture_default_str();
  swe->add_option("--m", swe_m, "net width")->capture_default_str();
  swe->add_option("--L", swe_L, "net depth")->capture_default_str();
  swe->add_option("--eta", swe_eta, "net step size")->capture_default_str();
  swe->add_option("--epochs", swe_epochs, "net epochs")->capture_default_str();
  swe->add_option("--sigma", swe_sigma, "net DSM noise std")->capture_default_str();

  // ---- sgm-train ---------------------------------------------------------
  auto* sgt = app.add_subcommand("sgm-train", "fit a time-conditioned score network");
  sgt->fallthrough();
  std::string sgt_data;
  double sgt_t0 = 0.01, sgt_T = 5.0, sgt_eta = 1e-3, sgt_clip = 0.0;
  int sgt_k = 4, sgt_m = 128, sgt_L = 3, sgt_epochs = 200;
  sgt->add_option("--data", sgt_data, "dataset CSV")->required();
  sgt->add_option("--t0", sgt_t0, "diffusion start time")
      ->check(CLI::Range(1e-9, 1e6))->capture_default_str();
  sgt->add_option("--T", sgt_T, "diffusion end time")->capture_default_str();
  sgt->add_option("--k-times", sgt_k, "time draws per sample step")
      ->check(CLI::Range(1, 100000))->capture_default_str();
  sgt->add_option("--m", sgt_m, "net width")->capture_default_str();
  sgt->add_option("--L", sgt_L, "net depth")->capture_default_str();
  sgt->add_option("--eta", sgt_eta, "step size")->capture_default_str();
  sgt->add_option("--epochs", sgt_epochs, "epochs")->capture_default_str();
  sgt->add_option("--clip-norm", sgt_clip, "input norm clip, 0 disables")
      ->capture_default_str();

  // ---- sgm-sample --------------------------------------------------------
  auto* sgs = app.add_subcommand("sgm-sample", "reverse-SDE sampling from a checkpoint");
  sgs->fallthrough();
  std::string sgs_ckpt;
  int sgs_samples = 1000, sgs_steps = 500;
  sgs->add_option("--checkpoint", sgs_ckpt, "sgm-train checkpoint JSON")->required();
  sgs->add_option("--n-samples", sgs_samples, "samples to draw")
      ->check(CLI::Range(1, 100000000))->capture_default_str();
  sgs->add_option("--n-steps", sgs_steps, "Euler-Maruyama steps")
      ->check(CLI::Range(1, 100000000))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const json cfg = load_config(shared.config);
    merge(app, cfg, "--seed", "seed", shared.seed);
    merge(app, cfg, "--out", "out", shared.out);

    if (*gen) {
      merge(*gen, cfg, "--d", "d", gen_d);
      merge(*gen, cfg, "--edge-prob", "edge_prob", gen_p);
      merge(*gen, cfg, "--cm", "cm", gen_cm);
      merge(*gen, cfg, "--sigma-lo", "sigma_lo", gen_slo);
      merge(*gen, cfg, "--sigma-hi", "sigma_hi", gen_shi);
      merge(*gen, cfg, "--n", "n", gen_n);
      merge(*gen, cfg, "--pilot-samples", "pilot_samples", gen_pilot);
      echo_config(shared, {{"cmd", "generate"}, {"seed", shared.seed}, {"d", gen_d},
                           {"edge_prob", gen_p}, {"cm", gen_cm}, {"n", gen_n}});
      scord::Rng scm_rng(scord::derive_seed(shared.seed, "scm"));
      const scord::Dag dag = scord::generate_dag(gen_d, gen_p, scm_rng);
      scord::BuildConfig bc{gen_slo, gen_shi, gen_pilot};
      const scord::Scm scm = scord::build_scm(dag, gen_cm, scm_rng, bc);
      scord::Rng noise(scord::derive_seed(shared.seed, "noise"));
      const scord::Dataset data = scord::sample(scm, gen_n, noise);
      const auto dir = out_dir(shared);
      scord::save_scm(scm, dir / "scm.json");
      scord::save_dataset(data, dir / "data.csv");
      std::cout << (dir / "scm.json").string() << "\n"
                << (dir / "data.csv").string() << "\n";
    } else if (*train) {
      merge(*train, cfg, "--m", "m", train_m);
      merge(*train, cfg, "--L", "L", train_L);
      merge(*train, cfg, "--eta", "eta", train_eta);
      merge(*train, cfg, "--epochs", "epochs", train_epochs);
      merge(*train, cfg, "--sigma", "sigma", train_sigma);
      merge(*train, cfg, "--eval-every", "eval_every", train_eval_every);
      echo_config(shared, {{"cmd", "train-score"}, {"seed", shared.seed},
                           {"m", train_m}, {"L", train_L}, {"eta", train_eta},
                           {"epochs", train_epochs}, {"sigma", train_sigma}});
      const scord::Dataset data = scord::load_dataset(train_data);
      scord::Rng init(scord::derive_seed(shared.seed, "init"));
      scord::MlpParams p = scord::mlp_init(data.d(), train_m, train_L, init);
      scord::DsmConfig dc;
      dc.sigma = train_sigma;
      dc.eta = train_eta;
      dc.epochs = train_epochs;
      dc.resample_noise = !train_fixed_noise;
      dc.eval_every = train_eval_every;
      dc.seed = scord::derive_seed(shared.seed, "noise");
      scord::EsmEvaluator esm;
      std::unique_ptr<scord::Scm> scm;
      if (!train_scm.empty()) {
        scm = std::make_unique<scord::Scm>(scord::load_scm(train_scm));
        esm = [&scm, &data](const scord::MlpParams& q) {
          return scord::esm_error(q, *scm, data);
        };
      }
      const auto [trained, report] = scord::sgd_train(std::move(p), data, dc, esm);
      const auto dir = out_dir(shared);
      scord::save_checkpoint(trained, dir / "score_net.json");
      scord::write_text_file(dir / "train_report.csv",
                             scord::train_report_to_csv(report));
      std::cout << (dir / "score_net.json").string() << "\n"
                << (dir / "train_report.csv").string() << "\n";
    } else if (*ord) {
      merge(*ord, cfg, "--backend", "backend", ord_backend);
      merge(*ord, cfg, "--diag-noise", "diag_noise", ord_noise);
      merge(*ord, cfg, "--m", "m", ord_m);
      merge(*ord, cfg, "--L", "L", ord_L);
      merge(*ord, cfg, "--eta", "eta", ord_eta);
      merge(*ord, cfg, "--epochs", "epochs", ord_epochs);
      merge(*ord, cfg, "--sigma", "sigma", ord_sigma);
      echo_config(shared, {{"cmd", "order"}, {"seed", shared.seed},
                           {"backend", ord_backend}});
      const scord::Dataset data = scord::load_dataset(ord_data);
      std::unique_ptr<scord::Scm> scm;
      if (!ord_scm.empty())
        scm = std::make_unique<scord::Scm>(scord::load_scm(ord_scm));
      scord::NetConfig nc;
      nc.m = ord_m;
      nc.L = ord_L;
      nc.dsm.eta = ord_eta;
      nc.dsm.epochs = ord_epochs;
      nc.dsm.sigma = ord_sigma;
      auto backend = make_backend(ord_backend, scm.get(), ord_noise, nc);
      scord::Rng rng(scord::derive_seed(shared.seed, "order"));
      const scord::OrderResult res = scord::score_order(data, *backend, rng);
      const auto dir = out_dir(shared);
      scord::write_text_file(dir / "order.json", scord::order_result_to_json(res));
      std::cout << (dir / "order.json").string() << "\n";
    } else if (*pru) {
      merge(*pru, cfg, "--backend", "backend", pru_backend);
      merge(*pru, cfg, "--diag-noise", "diag_noise", pru_noise);
      merge(*pru, cfg, "--tau-rel", "tau_rel", pru_tau);
      merge(*pru, cfg, "--m", "m", pru_m);
      merge(*pru, cfg, "--L", "L", pru_L);
      merge(*pru, cfg, "--eta", "eta", pru_eta);
      merge(*pru, cfg, "--epochs", "epochs", pru_epochs);
      merge(*pru, cfg, "--sigma", "sigma", pru_sigma);
      echo_config(shared, {{"cmd", "prune"}, {"seed", shared.seed},
                           {"backend", pru_backend}, {"tau_rel", pru_tau}});
      const scord::Dataset data = scord::load_dataset(pru_data);
      const scord::OrderResult order =
          scord::order_result_from_json(scord::read_text_file(pru_order));
      std::unique_ptr<scord::Scm> scm;
      if (!pru_scm.empty())
        scm = std::make_unique<scord::Scm>(scord::load_scm(pru_scm));
      scord::NetConfig nc;
      nc.m = pru_m;
      nc.L = pru_L;
      nc.dsm.eta = pru_eta;
      nc.dsm.epochs = pru_epochs;
      nc.dsm.sigma = pru_sigma;
      auto backend = make_backend(pru_backend, scm.get(), pru_noise, nc);
      scord::Rng rng(scord::derive_seed(shared.seed, "prune"));
      const scord::CausalGraph graph =
          scord::prune(data, order.pi, *backend, {pru_tau}, rng);
      const auto dir = out_dir(shared);
      scord::write_text_file(dir / "edges.csv", scord::graph_to_csv(graph));
      std::cout << (dir / "edges.csv").string() << "\n";
    } else if (*swe) {
      merge(*swe, cfg, "--axis", "axis", swe_axis);
      merge(*swe, cfg, "--d", "d", swe_d);
      merge(*swe, cfg, "--n", "n", swe_n);
      merge(*swe, cfg, "--cm", "cm", swe_cm);
      merge(*swe, cfg, "--edge-prob", "edge_prob", swe_p);
      merge(*swe, cfg, "--runs", "runs", swe_runs);
      merge(*swe, cfg, "--backend", "backend", swe_backend);
      merge(*swe, cfg, "--diag-noise", "diag_noise", swe_noise);
      merge(*swe, cfg, "--tau-rel", "tau_rel", swe_tau);
      merge(*swe, cfg, "--threads", "threads", swe_threads);
      merge(*swe, cfg, "--m", "m", swe_m);
      merge(*swe, cfg, "--L", "L", swe_L);
      merge(*swe, cfg, "--eta", "eta", swe_eta);
      merge(*swe, cfg, "--epochs", "epochs", swe_epochs);
      merge(*swe, cfg, "--sigma", "sigma", swe_sigma);
      scord::SweepConfig sc;
      if (swe_axis == "cm") sc.axis = scord::SweepAxis::Cm;
      else if (swe_axis == "n") sc.axis = scord::SweepAxis::N;
      else if (swe_axis == "d") sc.axis = scord::SweepAxis::D;
      else throw CLI::ValidationError("--axis", "must be cm, n or d");
      sc.grid = swe_grid;
      sc.d = swe_d;
      sc.n = swe_n;
      sc.cm = swe_cm;
      sc.edge_prob = swe_p;
      sc.runs = swe_runs;
      sc.base_seed = shared.seed;
      sc.backend = parse_backend(swe_backend);
      sc.diag_noise = swe_noise;
      sc.prune.tau_rel = swe_tau;
      sc.threads = swe_threads;
      sc.net.m = swe_m;
      sc.net.L = swe_L;
      sc.net.dsm.eta = swe_eta;
      sc.net.dsm.epochs = swe_epochs;
      sc.net.dsm.sigma = swe_sigma;
      echo_config(shared, {{"cmd", "sweep"}, {"axis", swe_axis},
                           {"seed", shared.seed}, {"runs", swe_runs},
                           {"backend", swe_backend}});
      const scord::SweepResult res = scord::run_sweep(sc);
      const auto dir = out_dir(shared);
      scord::write_text_file(dir / "sweep_rows.csv",
                             scord::sweep_rows_to_csv(sc, res.rows));
      scord::write_text_file(dir / "sweep_summary.csv",
                             scord::sweep_summary_to_csv(sc, res.summary));
      std::cout << (dir / "sweep_rows.csv").string() << "\n"
                << (dir / "sweep_summary.csv").string() << "\n";
    } else if (*sgt) {
      merge(*sgt, cfg, "--t0", "t0", sgt_t0);
      merge(*sgt, cfg, "--T", "T", sgt_T);
      merge(*sgt, cfg, "--k-times", "k_times", sgt_k);
      merge(*sgt, cfg, "--m", "m", sgt_m);
      merge(*sgt, cfg, "--L", "L", sgt_L);
      merge(*sgt, cfg, "--eta", "eta", sgt_eta);
      merge(*sgt, cfg, "--epochs", "epochs", sgt_epochs);
      merge(*sgt, cfg, "--clip-norm", "clip_norm", sgt_clip);
      echo_config(shared, {{"cmd", "sgm-train"}, {"seed", shared.seed},
                           {"t0", sgt_t0}, {"T", sgt_T}, {"epochs", sgt_epochs}});
      const scord::Dataset data = scord::load_dataset(sgt_data);
      const scord::OuSchedule sched{sgt_t0, sgt_T};
      scord::validate_schedule(sched);
      scord::Rng init(scord::derive_seed(shared.seed, "init"));
      scord::TimeNet tn = scord::time_net_init(data.d(), sgt_m, sgt_L, init);
      scord::SgmTrainConfig tc;
      tc.eta = sgt_eta;
      tc.epochs = sgt_epochs;
      tc.k_times = sgt_k;
      tc.clip_norm = sgt_clip;
      tc.seed = scord::derive_seed(shared.seed, "noise");
      const auto [trained, report] = scord::train_sgm(std::move(tn), data, sched, tc);
      const auto dir = out_dir(shared);
      scord::save_time_net(trained, sched, dir / "sgm_net.json");
      std::string csv = "epoch,loss\n";
      for (std::size_t e = 0; e < report.epoch_loss.size(); ++e)
        csv += std::to_string(e + 1) + "," +
               scord::format_double(report.epoch_loss[e]) + "\n";
      scord::write_text_file(dir / "sgm_report.csv", csv);
      std::cout << (dir / "sgm_net.json").string() << "\n"
                << (dir / "sgm_report.csv").string() << "\n";
    } else if (*sgs) {
      merge(*sgs, cfg, "--n-samples", "n_samples", sgs_samples);
      merge(*sgs, cfg, "--n-steps", "n_steps", sgs_steps);
      echo_config(shared, {{"cmd", "sgm-sample"}, {"seed", shared.seed},
                           {"n_samples", sgs_samples}, {"n_steps", sgs_steps}});
      const auto [tn, sched] = scord::load_time_net(sgs_ckpt);
      scord::Rng rng(scord::derive_seed(shared.seed, "noise"));
      const Eigen::MatrixXd draws =
          scord::reverse_sample(tn, sched, sgs_steps, sgs_samples, rng);
      scord::Dataset out;
      out.values = draws;
      out.column_labels.resize(tn.data_dim);
      std::iota(out.column_labels.begin(), out.column_labels.end(), 0);
      const auto dir = out_dir(shared);
      scord::save_dataset(out, dir / "samples.csv");
      scord::write_text_file(dir / "samples_schedule.json",
                             scord::schedule_sidecar_json(sched, sgs_steps));
      std::cout << (dir / "samples.csv").string() << "\n"
                << (dir / "samples_schedule.json").string() << "\n";
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

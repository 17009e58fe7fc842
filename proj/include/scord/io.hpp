// File formats: model JSON, dataset CSV (17 significant digits), weight
// checkpoints, order/graph exports and sweep CSVs. Node ids are 1-based in
// every file; in memory everything is 0-based.

#pragma once

#include <filesystem>
#include <string>

#include "scord/mlp.hpp"
#include "scord/order.hpp"
#include "scord/scm.hpp"
#include "scord/sgm.hpp"
#include "scord/sweep.hpp"

namespace scord {

std::string scm_to_json(const Scm& scm);
Scm scm_from_json(const std::string& text);
void save_scm(const Scm& scm, const std::filesystem::path& path);
Scm load_scm(const std::filesystem::path& path);

std::string dataset_to_csv(const Dataset& data);
Dataset dataset_from_csv(const std::string& text);
void save_dataset(const Dataset& data, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

std::string checkpoint_to_json(const MlpParams& p);
MlpParams checkpoint_from_json(const std::string& text);
void save_checkpoint(const MlpParams& p, const std::filesystem::path& path);
MlpParams load_checkpoint(const std::filesystem::path& path);

std::string time_net_to_json(const TimeNet& tn, const OuSchedule& sched);
std::pair<TimeNet, OuSchedule> time_net_from_json(const std::string& text);
void save_time_net(const TimeNet& tn, const OuSchedule& sched,
                   const std::filesystem::path& path);
std::pair<TimeNet, OuSchedule> load_time_net(const std::filesystem::path& path);

std::string order_result_to_json(const OrderResult& result);
OrderResult order_result_from_json(const std::string& text);

std::string graph_to_csv(const CausalGraph& graph);
CausalGraph graph_from_csv(const std::string& text, int d);

std::string train_report_to_csv(const TrainReport& report);

std::string sweep_rows_to_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);
std::string sweep_summary_to_csv(const SweepConfig& cfg,
                                 const std::vector<SweepSummary>& summary);

std::string schedule_sidecar_json(const OuSchedule& sched, int n_steps);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// Shortest decimal that round-trips the double (17 significant digits).
std::string format_double(double v);

}  // namespace scord

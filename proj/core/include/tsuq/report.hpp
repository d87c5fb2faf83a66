#pragma once

#include "tsuq/experiment.hpp"
#include "tsuq/ranking.hpp"

namespace tsuq::harness {

// <out>/<dataset>/<model_label>
std::string report_dir(const std::string& out_dir, const std::string& dataset,
                       const std::string& model_label);

// Writes the report's files under report_dir(...): metrics.json,
// loss_history.csv, reliability.csv and conf_error.csv (single part),
// per_horizon.csv (sweep part). All writes are atomic
// (temp-file-then-rename) and floats round-trip exactly.
void emit_report(const MetricReport& report, const std::string& out_dir);

// Writes <dataset_dir>/ranking.csv (12 rows, one rank column per metric
// plus the two labels) and an aligned plain-text ranking.txt.
void emit_ranking(const RankingTable& table, const std::string& dataset_dir);

// Reads one emitted metrics.json back into a ranking row input.
LabeledBundle load_labeled_bundle(const std::string& metrics_json_path);

// Reconstructs a MetricReport from an emitted directory (inverse of
// emit_report, minus the loss history).
MetricReport load_report(const std::string& model_dir);

}  // namespace tsuq::harness

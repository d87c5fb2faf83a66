#pragma once

#include "tsuq/classify.hpp"
#include "tsuq/loaders.hpp"
#include "tsuq/synth.hpp"
#include "tsuq/train.hpp"

namespace tsuq::harness {

enum class HorizonMode { Single, Sweep };

struct ExperimentConfig {
    // sine | ar1 | linear (synthetic) or pm25 | jena (data_path required)
    std::string dataset = "sine";
    std::string data_path;
    std::size_t synth_n = 2000;
    double synth_noise = 0.1;
    std::uint64_t synth_seed = 42;

    double train_fraction = 0.8;
    nn::ModelConfig model;
    nn::TrainConfig train;
    // When set (the default), the training loss follows the method:
    // Gaussian NLL for Baseline, MSE otherwise.
    bool auto_loss = true;
    HorizonMode mode = HorizonMode::Single;
    std::size_t sweep_horizon = 12;

    // Root of the report tree; empty = keep everything in memory, write
    // nothing.
    std::string out_dir;
};

struct MetricReport {
    std::string dataset;
    std::string model_label;
    // Per-epoch training loss; for ensembles the mean across members.
    std::vector<double> loss_history;

    bool has_single = false;
    metrics::MetricBundle overall;
    metrics::ReliabilityCurve reliability;
    metrics::ConfidenceErrorCurve conf_error;
    QualLabel conf_error_label = QualLabel::Bad;

    bool has_sweep = false;
    std::vector<metrics::MetricBundle> per_step;
    QualLabel horizon_label = QualLabel::Bad;
};

// Resolves a dataset id to its series (loading or generating it).
dataio::FrameTable load_dataset(const ExperimentConfig& cfg);

// Full pipeline: load, standardize on the training portion, window, split,
// train (ensembles train ensemble_size members on split seeds; checkpoints
// are persisted under out_dir when given), predict on the test windows,
// compute metrics and curves. Deterministic for a fixed config.
// Sweep mode instead trains one sweep_horizon-step model and fills the
// per-step bundles plus the horizon label.
MetricReport run_experiment(const ExperimentConfig& cfg);

// Sweep-mode shortcut returning just the per-step bundles.
std::vector<metrics::MetricBundle> horizon_sweep(const ExperimentConfig& cfg,
                                                 std::size_t h_max = 12);

// Single + sweep results for the same model, merged into one report.
MetricReport merge_reports(const MetricReport& single_part,
                           const MetricReport& sweep_part);

}  // namespace tsuq::harness

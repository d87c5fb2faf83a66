#include "tsuq/experiment.hpp"

#include <cmath>
#include <cstdio>

#include "tsuq/checkpoint.hpp"
#include "tsuq/predictive.hpp"
#include "tsuq/report.hpp"

namespace tsuq::harness {

using dataio::FrameTable;
using dataio::NormStats;
using dataio::WindowSet;
using nn::Model;
using nn::ModelConfig;
using nn::TrainConfig;
using nn::UqMethod;
using uq::PredictiveDistribution;

dataio::FrameTable load_dataset(const ExperimentConfig& cfg) {
    if (cfg.dataset == "pm25" || cfg.dataset == "jena") {
        if (cfg.data_path.empty()) {
            throw ConfigError("dataset '" + cfg.dataset + "' needs data_path");
        }
        return cfg.dataset == "pm25" ? dataio::load_pm25(cfg.data_path)
                                     : dataio::load_jena(cfg.data_path);
    }
    if (cfg.dataset == "sine" || cfg.dataset == "ar1" || cfg.dataset == "linear") {
        return dataio::synth_series(dataio::synth_kind_from_string(cfg.dataset),
                                    cfg.synth_n, cfg.synth_noise, cfg.synth_seed);
    }
    throw ConfigError("unknown dataset '" + cfg.dataset +
                      "' (expected sine|ar1|linear|pm25|jena)");
}

namespace {

Tensor column(const Tensor& m, std::size_t c) {
    return col_range(m, c, c + 1);
}

struct TrainedPredictor {
    PredictiveDistribution pred;
    std::vector<double> loss_history;
};

// Trains the configured model (or ensemble) and predicts on the test
// windows. file_tag distinguishes checkpoint files across modes.
TrainedPredictor train_and_predict(const ExperimentConfig& cfg,
                                   const ModelConfig& mc, const TrainConfig& tcfg,
                                   const WindowSet& train_ws,
                                   const WindowSet& test_ws,
                                   const std::string& file_tag) {
    RngStream root(tcfg.seed);
    const std::string ckpt_dir =
        cfg.out_dir.empty()
            ? std::string()
            : report_dir(cfg.out_dir, cfg.dataset, mc.label()) + "/checkpoints";

    if (mc.uq_method == UqMethod::Ensemble) {
        RngStream member_root = root.split("member");
        std::vector<Model> members;
        members.reserve(mc.ensemble_size);
        std::vector<double> mean_history;
        for (std::size_t k = 0; k < mc.ensemble_size; ++k) {
            RngStream mrng = member_root.split(k);
            RngStream init_rng = mrng.split("init");
            Model member = build_model(mc, init_rng);
            RngStream train_rng = mrng.split("train");
            const std::vector<double> hist = train(member, train_ws, tcfg, train_rng);
            if (mean_history.empty()) mean_history.assign(hist.size(), 0.0);
            for (std::size_t e = 0; e < hist.size(); ++e) {
                mean_history[e] += hist[e] / static_cast<double>(mc.ensemble_size);
            }
            if (!ckpt_dir.empty()) {
                char name[64];
                std::snprintf(name, sizeof(name), "%smember_%02zu.json",
                              file_tag.c_str(), k);
                nn::save_checkpoint(member, tcfg.seed, ckpt_dir + "/" + name);
            }
            members.push_back(std::move(member));
        }
        return {uq::ensemble_predict(members, test_ws.x), std::move(mean_history)};
    }

    RngStream init_rng = root.split("init");
    Model model = build_model(mc, init_rng);
    RngStream train_rng = root.split("train");
    std::vector<double> history = train(model, train_ws, tcfg, train_rng);
    if (!ckpt_dir.empty()) {
        nn::save_checkpoint(model, tcfg.seed, ckpt_dir + "/" + file_tag + "model.json");
    }

    if (mc.uq_method == UqMethod::Baseline) {
        return {uq::baseline_predict(model, test_ws.x), std::move(history)};
    }
    RngStream predict_rng = root.split("predict");
    return {uq::mc_predict(model, test_ws.x, mc.mc_samples, predict_rng),
            std::move(history)};
}

MetricReport run_experiment_impl(const ExperimentConfig& cfg) {
    const FrameTable raw = load_dataset(cfg);

    ModelConfig mc = cfg.model;
    mc.features = raw.cols();
    if (cfg.mode == HorizonMode::Sweep) mc.horizon = cfg.sweep_horizon;
    nn::validate_config(mc);

    TrainConfig tcfg = cfg.train;
    if (cfg.auto_loss) tcfg.loss = nn::default_loss(mc.uq_method);

    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
        throw ConfigError("train_fraction must be in (0,1)");
    }
    const std::size_t boundary = static_cast<std::size_t>(
        std::floor(static_cast<double>(raw.rows()) * cfg.train_fraction));
    if (boundary == 0 || boundary >= raw.rows()) {
        throw ConfigError("train_fraction leaves an empty split side");
    }
    const NormStats stats =
        dataio::standardize(dataio::slice_rows(raw, 0, boundary)).second;
    const FrameTable standardized = dataio::standardize(raw, &stats).first;
    const WindowSet windows =
        dataio::make_windows(standardized, mc.window, mc.horizon, &stats);
    const auto [train_ws, test_ws] = dataio::split(windows, cfg.train_fraction);

    const std::string file_tag = cfg.mode == HorizonMode::Sweep ? "sweep_" : "";
    const TrainedPredictor tp =
        train_and_predict(cfg, mc, tcfg, train_ws, test_ws, file_tag);

    const metrics::TargetScale scale{test_ws.target_mean, test_ws.target_std};

    MetricReport report;
    report.dataset = cfg.dataset;
    report.model_label = mc.label();
    report.loss_history = tp.loss_history;

    if (cfg.mode == HorizonMode::Single) {
        report.has_single = true;
        report.overall = metrics::bundle(test_ws.y, tp.pred.mean, tp.pred.std, scale);
        report.reliability =
            metrics::reliability_curve(test_ws.y, tp.pred.mean, tp.pred.std);
        report.conf_error =
            metrics::error_vs_confidence(test_ws.y, tp.pred.mean, tp.pred.std);
        // A degenerate (constant-sigma) curve is inconclusive by definition.
        report.conf_error_label = report.conf_error.mae.size() >= 3
                                      ? classify_conf_error(report.conf_error)
                                      : QualLabel::Bad;
    } else {
        report.has_sweep = true;
        report.per_step.reserve(mc.horizon);
        for (std::size_t h = 0; h < mc.horizon; ++h) {
            report.per_step.push_back(metrics::bundle(column(test_ws.y, h),
                                                      column(tp.pred.mean, h),
                                                      column(tp.pred.std, h), scale));
        }
        report.horizon_label = classify_horizon(report.per_step);
    }
    return report;
}

}  // namespace

MetricReport run_experiment(const ExperimentConfig& cfg) {
    try {
        return run_experiment_impl(cfg);
    } catch (const TrainingDiverged& e) {
        throw TrainingDiverged(e.epoch, std::string(e.what()) + " [dataset=" +
                                            cfg.dataset + " model=" +
                                            cfg.model.label() + "]");
    }
}

std::vector<metrics::MetricBundle> horizon_sweep(const ExperimentConfig& cfg,
                                                 std::size_t h_max) {
    ExperimentConfig sweep_cfg = cfg;
    sweep_cfg.mode = HorizonMode::Sweep;
    sweep_cfg.sweep_horizon = h_max;
    return run_experiment(sweep_cfg).per_step;
}

MetricReport merge_reports(const MetricReport& single_part,
                           const MetricReport& sweep_part) {
    if (single_part.dataset != sweep_part.dataset ||
        single_part.model_label != sweep_part.model_label) {
        throw InvalidArgument("merge_reports: reports describe different runs");
    }
    MetricReport merged = single_part;
    merged.has_sweep = sweep_part.has_sweep;
    merged.per_step = sweep_part.per_step;
    merged.horizon_label = sweep_part.horizon_label;
    return merged;
}

}  // namespace tsuq::harness

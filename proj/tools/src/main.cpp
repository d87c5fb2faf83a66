// tsuq command line: train / evaluate / sweep / rank / report / synth.
//
// Exit codes: 0 success, 1 usage or config error, 2 runtime error.
// Progress goes to stdout (silenced by --quiet), everything machine-readable
// goes to files under the output directory.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tsuq/config.hpp"
#include "tsuq/experiment.hpp"
#include "tsuq/io_util.hpp"
#include "tsuq/report.hpp"
#include "tsuq/synth.hpp"

namespace fs = std::filesystem;
using tsuq::harness::ExperimentConfig;
using tsuq::harness::HorizonMode;
using tsuq::harness::MetricReport;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    long long seed = -1;
    bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path,
                    "Experiment config file (sectioned key=value text)");
    cmd->add_option("-s,--set", opts.overrides,
                    "Override one config entry, e.g. --set train.epochs=5")
        ->type_name("SECTION.KEY=VALUE");
    cmd->add_option("-o,--out", opts.out_dir,
                    "Report root (overrides experiment.out_dir)");
    cmd->add_option("--seed", opts.seed, "Training seed (overrides train.seed)");
    cmd->add_flag("-q,--quiet", opts.quiet, "Suppress progress output");
}

ExperimentConfig resolve_config(const CommonOpts& opts) {
    ExperimentConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = tsuq::harness::load_experiment_config(opts.config_path);
    }
    for (const auto& assignment : opts.overrides) {
        tsuq::harness::apply_override(cfg, assignment);
    }
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.seed >= 0) cfg.train.seed = static_cast<std::uint64_t>(opts.seed);
    return cfg;
}

void say(const CommonOpts& opts, const std::string& line) {
    if (!opts.quiet) std::cout << line << "\n";
}

std::string metric_line(const tsuq::metrics::MetricBundle& b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "mape=%.4g  mse=%.4g  r2=%.4g  ece=%.4g  nll=%.4g", b.mape,
                  b.mse, b.r2, b.ece, b.nll);
    return buf;
}

void print_report(const MetricReport& rep) {
    std::cout << rep.dataset << " / " << rep.model_label << "\n";
    if (rep.has_single) {
        std::cout << "  " << metric_line(rep.overall) << "\n"
                  << "  error-vs-confidence: "
                  << tsuq::harness::to_string(rep.conf_error_label) << "\n";
    }
    if (rep.has_sweep) {
        std::cout << "  horizon degradation: "
                  << tsuq::harness::to_string(rep.horizon_label) << "\n";
        for (std::size_t h = 0; h < rep.per_step.size(); ++h) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "  step %2zu  ", h + 1);
            std::cout << buf << metric_line(rep.per_step[h]) << "\n";
        }
    }
}

int cmd_train(const CommonOpts& opts) {
    ExperimentConfig cfg = resolve_config(opts);
    cfg.mode = HorizonMode::Single;
    if (cfg.out_dir.empty()) {
        throw tsuq::ConfigError(
            "train needs an output directory (--out or experiment.out_dir)");
    }
    say(opts, "training " + cfg.model.label() + " on " + cfg.dataset + " ...");
    const MetricReport rep = tsuq::harness::run_experiment(cfg);
    tsuq::harness::emit_report(rep, cfg.out_dir);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "final training loss %.6g",
                  rep.loss_history.empty() ? 0.0 : rep.loss_history.back());
    say(opts, std::string(buf) + ", checkpoints under " +
                  tsuq::harness::report_dir(cfg.out_dir, rep.dataset,
                                            rep.model_label) +
                  "/checkpoints");
    return 0;
}

int cmd_evaluate(const CommonOpts& opts) {
    ExperimentConfig cfg = resolve_config(opts);
    cfg.mode = HorizonMode::Single;
    say(opts, "evaluating " + cfg.model.label() + " on " + cfg.dataset + " ...");
    const MetricReport rep = tsuq::harness::run_experiment(cfg);
    if (!cfg.out_dir.empty()) tsuq::harness::emit_report(rep, cfg.out_dir);
    if (!opts.quiet) print_report(rep);
    return 0;
}

// One sweep job: the single-horizon run plus the 12-step sweep, merged.
MetricReport run_both_modes(ExperimentConfig cfg) {
    cfg.mode = HorizonMode::Single;
    const MetricReport single_part = tsuq::harness::run_experiment(cfg);
    cfg.mode = HorizonMode::Sweep;
    const MetricReport sweep_part = tsuq::harness::run_experiment(cfg);
    return tsuq::harness::merge_reports(single_part, sweep_part);
}

int cmd_sweep(const CommonOpts& opts, bool grid, unsigned jobs) {
    const ExperimentConfig base = resolve_config(opts);

    std::vector<ExperimentConfig> runs;
    if (grid) {
        for (const auto& label : tsuq::harness::canonical_model_order()) {
            ExperimentConfig cfg = base;
            const auto underscore = label.find('_');
            cfg.model.architecture =
                tsuq::nn::architecture_from_string(label.substr(0, underscore));
            cfg.model.uq_method =
                tsuq::nn::uq_method_from_string(label.substr(underscore + 1));
            runs.push_back(std::move(cfg));
        }
    } else {
        runs.push_back(base);
    }

    std::mutex mu;
    std::size_t next = 0;
    std::string first_error;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= runs.size() || !first_error.empty()) return;
                i = next++;
            }
            const std::string label = runs[i].model.label();
            try {
                const MetricReport rep = run_both_modes(runs[i]);
                if (!runs[i].out_dir.empty()) {
                    tsuq::harness::emit_report(rep, runs[i].out_dir);
                }
                std::lock_guard<std::mutex> lock(mu);
                say(opts, label + ": " + metric_line(rep.overall) + "  horizon=" +
                              tsuq::harness::to_string(rep.horizon_label));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(mu);
                if (first_error.empty()) {
                    first_error = label + ": " + e.what();
                }
                return;
            }
        }
    };

    if (jobs < 1) jobs = 1;
    say(opts, "sweeping " + std::to_string(runs.size()) + " model(s) on " +
                  base.dataset + " with " + std::to_string(jobs) + " job(s)");
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < jobs && t + 1 < runs.size(); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw tsuq::Error(first_error);

    if (grid && !base.out_dir.empty()) {
        std::vector<tsuq::harness::LabeledBundle> bundles;
        for (const auto& label : tsuq::harness::canonical_model_order()) {
            bundles.push_back(tsuq::harness::load_labeled_bundle(
                tsuq::harness::report_dir(base.out_dir, base.dataset, label) +
                "/metrics.json"));
        }
        const auto table = tsuq::harness::rank_models(bundles);
        tsuq::harness::emit_ranking(table, base.out_dir + "/" + base.dataset);
        say(opts, "wrote " + base.out_dir + "/" + base.dataset + "/ranking.csv");
    }
    return 0;
}

int cmd_rank(const std::string& in_dir, bool quiet) {
    std::vector<tsuq::harness::LabeledBundle> bundles;
    for (const auto& label : tsuq::harness::canonical_model_order()) {
        bundles.push_back(tsuq::harness::load_labeled_bundle(
            in_dir + "/" + label + "/metrics.json"));
    }
    const auto table = tsuq::harness::rank_models(bundles);
    tsuq::harness::emit_ranking(table, in_dir);
    if (!quiet) {
        std::cout << tsuq::read_file(in_dir + "/ranking.txt");
        std::cout << "wrote " << in_dir << "/ranking.csv\n";
    }
    return 0;
}

int cmd_report(const std::string& in_dir) {
    if (fs::exists(in_dir + "/metrics.json")) {
        print_report(tsuq::harness::load_report(in_dir));
        return 0;
    }
    bool any = false;
    for (const auto& label : tsuq::harness::canonical_model_order()) {
        const std::string dir = in_dir + "/" + label;
        if (!fs::exists(dir + "/metrics.json")) continue;
        print_report(tsuq::harness::load_report(dir));
        any = true;
    }
    if (fs::exists(in_dir + "/ranking.txt")) {
        std::cout << tsuq::read_file(in_dir + "/ranking.txt");
        any = true;
    }
    if (!any) {
        throw tsuq::IoError("no reports found under: " + in_dir);
    }
    return 0;
}

int cmd_synth(const std::string& kind, std::size_t n, double noise,
              std::uint64_t seed, const std::string& out_file, bool quiet) {
    const auto frame =
        tsuq::dataio::synth_series(tsuq::dataio::synth_kind_from_string(kind), n,
                                   noise, seed);
    std::string csv = "t,value\n";
    for (std::size_t r = 0; r < frame.rows(); ++r) {
        csv += std::to_string(frame.timestamps[r]) + "," +
               tsuq::fmt_double(frame.features.at(r, 0)) + "\n";
    }
    tsuq::atomic_write_file(out_file, csv);
    if (!quiet) {
        std::cout << "wrote " << frame.rows() << " rows to " << out_file << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-series forecasting with uncertainty estimates"};
    app.require_subcommand(1);

    CommonOpts train_opts;
    auto* train = app.add_subcommand(
        "train", "Train one model and persist its checkpoints");
    add_common_flags(train, train_opts);

    CommonOpts eval_opts;
    auto* evaluate = app.add_subcommand(
        "evaluate", "Train, predict on the test split and report metrics");
    add_common_flags(evaluate, eval_opts);

    CommonOpts sweep_opts;
    bool sweep_grid = false;
    unsigned sweep_jobs = 1;
    auto* sweep = app.add_subcommand(
        "sweep", "Single-horizon evaluation plus the multi-step horizon sweep");
    add_common_flags(sweep, sweep_opts);
    sweep->add_flag("--grid", sweep_grid,
                    "Run all 12 architecture x method combinations and rank them");
    sweep->add_option("-j,--jobs", sweep_jobs, "Parallel model runs")
        ->check(CLI::PositiveNumber);

    std::string rank_in;
    bool rank_quiet = false;
    auto* rank = app.add_subcommand(
        "rank", "Rank the 12 completed reports of one dataset directory");
    rank->add_option("-i,--in", rank_in, "Dataset report directory")->required();
    rank->add_flag("-q,--quiet", rank_quiet, "Suppress the printed table");

    std::string report_in;
    auto* report = app.add_subcommand(
        "report", "Print emitted reports as readable text");
    report->add_option("-i,--in", report_in,
                       "Model or dataset report directory")
        ->required();

    std::string synth_kind = "sine";
    std::size_t synth_n = 2000;
    double synth_noise = 0.1;
    std::uint64_t synth_seed = 42;
    std::string synth_out = "series.csv";
    bool synth_quiet = false;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic series CSV");
    synth->add_option("-k,--kind", synth_kind, "sine | ar1 | linear");
    synth->add_option("-n,--n", synth_n, "Number of timesteps");
    synth->add_option("--noise", synth_noise, "Gaussian noise std dev");
    synth->add_option("--seed", synth_seed, "Generator seed");
    synth->add_option("-o,--out-file", synth_out, "Destination CSV path");
    synth->add_flag("-q,--quiet", synth_quiet, "Suppress progress output");

    try {
        app.parse(argc, argv);
        if (train->parsed()) return cmd_train(train_opts);
        if (evaluate->parsed()) return cmd_evaluate(eval_opts);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_grid, sweep_jobs);
        if (rank->parsed()) return cmd_rank(rank_in, rank_quiet);
        if (report->parsed()) return cmd_report(report_in);
        if (synth->parsed()) {
            return cmd_synth(synth_kind, synth_n, synth_noise, synth_seed,
                             synth_out, synth_quiet);
        }
    } catch (const CLI::RequiredError&) {
        std::cerr << app.help();
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    } catch (const tsuq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

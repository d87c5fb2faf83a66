#include "tsuq/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "tsuq/csv.hpp"
#include "tsuq/io_util.hpp"

namespace tsuq::harness {

using nlohmann::json;

std::string report_dir(const std::string& out_dir, const std::string& dataset,
                       const std::string& model_label) {
    return out_dir + "/" + dataset + "/" + model_label;
}

namespace {

json bundle_to_json(const metrics::MetricBundle& b) {
    return json{{"mape", b.mape}, {"mse", b.mse}, {"r2", b.r2},
                {"ece", b.ece},   {"nll", b.nll}};
}

metrics::MetricBundle bundle_from_json(const json& j) {
    metrics::MetricBundle b;
    b.mape = j.at("mape");
    b.mse = j.at("mse");
    b.r2 = j.at("r2");
    b.ece = j.at("ece");
    b.nll = j.at("nll");
    return b;
}

double cell_to_double(const std::string& cell, const std::string& path) {
    try {
        return std::stod(cell);
    } catch (const std::exception&) {
        throw FormatError(path + ": cannot parse number '" + cell + "'");
    }
}

}  // namespace

void emit_report(const MetricReport& report, const std::string& out_dir) {
    const std::string dir = report_dir(out_dir, report.dataset, report.model_label);
    ensure_dir(dir);

    json j;
    j["dataset"] = report.dataset;
    j["model"] = report.model_label;
    j["has_single"] = report.has_single;
    j["has_sweep"] = report.has_sweep;
    if (report.has_single) {
        j["metrics"] = bundle_to_json(report.overall);
        j["labels"]["conf_error"] = to_string(report.conf_error_label);
    }
    if (report.has_sweep) {
        j["labels"]["horizon"] = to_string(report.horizon_label);
    }
    atomic_write_file(dir + "/metrics.json", j.dump(1) + "\n");

    if (!report.loss_history.empty()) {
        std::ostringstream out;
        out << "epoch,loss\n";
        for (std::size_t e = 0; e < report.loss_history.size(); ++e) {
            out << (e + 1) << ',' << fmt_double(report.loss_history[e]) << '\n';
        }
        atomic_write_file(dir + "/loss_history.csv", out.str());
    }

    if (report.has_single) {
        {
            std::ostringstream out;
            out << "level,coverage\n";
            for (std::size_t i = 0; i < report.reliability.levels.size(); ++i) {
                out << fmt_double(report.reliability.levels[i]) << ','
                    << fmt_double(report.reliability.coverage[i]) << '\n';
            }
            atomic_write_file(dir + "/reliability.csv", out.str());
        }
        {
            std::ostringstream out;
            out << "x,mae,retained\n";
            for (std::size_t i = 0; i < report.conf_error.x.size(); ++i) {
                out << fmt_double(report.conf_error.x[i]) << ','
                    << fmt_double(report.conf_error.mae[i]) << ','
                    << report.conf_error.retained[i] << '\n';
            }
            atomic_write_file(dir + "/conf_error.csv", out.str());
        }
    }

    if (report.has_sweep) {
        std::ostringstream out;
        out << "step,mape,mse,r2,ece,nll\n";
        for (std::size_t h = 0; h < report.per_step.size(); ++h) {
            const auto& b = report.per_step[h];
            out << (h + 1) << ',' << fmt_double(b.mape) << ',' << fmt_double(b.mse)
                << ',' << fmt_double(b.r2) << ',' << fmt_double(b.ece) << ','
                << fmt_double(b.nll) << '\n';
        }
        atomic_write_file(dir + "/per_horizon.csv", out.str());
    }
}

void emit_ranking(const RankingTable& table, const std::string& dataset_dir) {
    ensure_dir(dataset_dir);
    {
        std::ostringstream out;
        out << "model,mape_rank,mse_rank,r2_rank,ece_rank,nll_rank,horizon,"
               "conf_error\n";
        for (const auto& r : table.rows) {
            out << r.model << ',' << r.mape_rank << ',' << r.mse_rank << ','
                << r.r2_rank << ',' << r.ece_rank << ',' << r.nll_rank << ','
                << to_string(r.horizon_label) << ',' << to_string(r.conf_error_label)
                << '\n';
        }
        atomic_write_file(dataset_dir + "/ranking.csv", out.str());
    }
    {
        std::size_t width = 5;  // "model"
        for (const auto& r : table.rows) width = std::max(width, r.model.size());
        std::ostringstream out;
        char line[160];
        std::snprintf(line, sizeof(line),
                      "%-*s  %5s %5s %5s %5s %5s  %-8s %-8s\n",
                      static_cast<int>(width), "model", "mape", "mse", "r2", "ece",
                      "nll", "horizon", "conf");
        out << line;
        for (const auto& r : table.rows) {
            std::snprintf(line, sizeof(line),
                          "%-*s  %5d %5d %5d %5d %5d  %-8s %-8s\n",
                          static_cast<int>(width), r.model.c_str(), r.mape_rank,
                          r.mse_rank, r.r2_rank, r.ece_rank, r.nll_rank,
                          to_string(r.horizon_label).c_str(),
                          to_string(r.conf_error_label).c_str());
            out << line;
        }
        atomic_write_file(dataset_dir + "/ranking.txt", out.str());
    }
}

LabeledBundle load_labeled_bundle(const std::string& metrics_json_path) {
    json j;
    try {
        j = json::parse(read_file(metrics_json_path));
    } catch (const json::exception& e) {
        throw FormatError(metrics_json_path + ": not valid JSON: " + e.what());
    }
    LabeledBundle b;
    try {
        b.model = j.at("model");
        if (!j.value("has_single", false)) {
            throw FormatError(metrics_json_path + ": no metrics block (was this "
                                                  "model evaluated at horizon 1?)");
        }
        b.metrics = bundle_from_json(j.at("metrics"));
        const json labels = j.value("labels", json::object());
        b.conf_error_label =
            qual_label_from_string(labels.value("conf_error", "Bad"));
        b.horizon_label = qual_label_from_string(labels.value("horizon", "Bad"));
    } catch (const json::exception& e) {
        throw FormatError(metrics_json_path + ": " + e.what());
    }
    return b;
}

MetricReport load_report(const std::string& model_dir) {
    json j;
    const std::string metrics_path = model_dir + "/metrics.json";
    try {
        j = json::parse(read_file(metrics_path));
    } catch (const json::exception& e) {
        throw FormatError(metrics_path + ": not valid JSON: " + e.what());
    }

    MetricReport report;
    try {
        report.dataset = j.at("dataset");
        report.model_label = j.at("model");
        report.has_single = j.value("has_single", false);
        report.has_sweep = j.value("has_sweep", false);
        const json labels = j.value("labels", json::object());
        if (report.has_single) {
            report.overall = bundle_from_json(j.at("metrics"));
            report.conf_error_label =
                qual_label_from_string(labels.value("conf_error", "Bad"));
        }
        if (report.has_sweep) {
            report.horizon_label =
                qual_label_from_string(labels.value("horizon", "Bad"));
        }
    } catch (const json::exception& e) {
        throw FormatError(metrics_path + ": " + e.what());
    }

    if (report.has_single) {
        const dataio::CsvTable rel = dataio::read_csv(model_dir + "/reliability.csv");
        for (const auto& row : rel.rows) {
            report.reliability.levels.push_back(
                cell_to_double(row[0], model_dir + "/reliability.csv"));
            report.reliability.coverage.push_back(
                cell_to_double(row[1], model_dir + "/reliability.csv"));
        }
        const dataio::CsvTable ce = dataio::read_csv(model_dir + "/conf_error.csv");
        for (const auto& row : ce.rows) {
            report.conf_error.x.push_back(
                cell_to_double(row[0], model_dir + "/conf_error.csv"));
            report.conf_error.mae.push_back(
                cell_to_double(row[1], model_dir + "/conf_error.csv"));
            report.conf_error.retained.push_back(
                static_cast<std::size_t>(std::stoull(row[2])));
        }
    }
    if (report.has_sweep) {
        const dataio::CsvTable ph = dataio::read_csv(model_dir + "/per_horizon.csv");
        for (const auto& row : ph.rows) {
            metrics::MetricBundle b;
            b.mape = cell_to_double(row[1], model_dir + "/per_horizon.csv");
            b.mse = cell_to_double(row[2], model_dir + "/per_horizon.csv");
            b.r2 = cell_to_double(row[3], model_dir + "/per_horizon.csv");
            b.ece = cell_to_double(row[4], model_dir + "/per_horizon.csv");
            b.nll = cell_to_double(row[5], model_dir + "/per_horizon.csv");
            report.per_step.push_back(b);
        }
    }
    return report;
}

}  // namespace tsuq::harness

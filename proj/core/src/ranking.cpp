#include "tsuq/ranking.hpp"

#include <algorithm>
#include <numeric>

#include "tsuq/error.hpp"

namespace tsuq::harness {

std::vector<std::string> canonical_model_order() {
    std::vector<std::string> order;
    for (const char* arch : {"mlp", "lstm"}) {
        for (const char* method :
             {"baseline", "ensemble", "dropout", "dropconnect", "bbb", "flipout"}) {
            order.push_back(std::string(arch) + "_" + method);
        }
    }
    return order;
}

namespace {

// 1-based ranks; stable sort keeps the input order on ties.
void assign_ranks(const std::vector<LabeledBundle>& bundles,
                  double (*key)(const metrics::MetricBundle&), bool ascending,
                  int RankingRow::* field, std::vector<RankingRow>& rows) {
    std::vector<std::size_t> order(bundles.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ka = key(bundles[a].metrics);
        const double kb = key(bundles[b].metrics);
        return ascending ? ka < kb : ka > kb;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        rows[order[pos]].*field = static_cast<int>(pos) + 1;
    }
}

}  // namespace

RankingTable rank_models(const std::vector<LabeledBundle>& bundles) {
    if (bundles.size() != 12) {
        throw InvalidArgument("rank_models: expected 12 rows, got " +
                              std::to_string(bundles.size()));
    }
    RankingTable table;
    table.rows.resize(bundles.size());
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        table.rows[i].model = bundles[i].model;
        table.rows[i].horizon_label = bundles[i].horizon_label;
        table.rows[i].conf_error_label = bundles[i].conf_error_label;
    }
    assign_ranks(bundles, [](const metrics::MetricBundle& b) { return b.mape; },
                 true, &RankingRow::mape_rank, table.rows);
    assign_ranks(bundles, [](const metrics::MetricBundle& b) { return b.mse; },
                 true, &RankingRow::mse_rank, table.rows);
    assign_ranks(bundles, [](const metrics::MetricBundle& b) { return b.r2; },
                 false, &RankingRow::r2_rank, table.rows);
    assign_ranks(bundles, [](const metrics::MetricBundle& b) { return b.ece; },
                 true, &RankingRow::ece_rank, table.rows);
    assign_ranks(bundles, [](const metrics::MetricBundle& b) { return b.nll; },
                 true, &RankingRow::nll_rank, table.rows);
    return table;
}

}  // namespace tsuq::harness

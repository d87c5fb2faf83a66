#pragma once

#include "tsuq/classify.hpp"

namespace tsuq::harness {

// Metric row plus qualitative labels for one architecture/method pair.
struct LabeledBundle {
    std::string model;  // e.g. "mlp_baseline"
    metrics::MetricBundle metrics;
    QualLabel horizon_label = QualLabel::Bad;
    QualLabel conf_error_label = QualLabel::Bad;
};

struct RankingRow {
    std::string model;
    int mape_rank = 0;
    int mse_rank = 0;
    int r2_rank = 0;
    int ece_rank = 0;
    int nll_rank = 0;
    QualLabel horizon_label = QualLabel::Bad;
    QualLabel conf_error_label = QualLabel::Bad;
};

struct RankingTable {
    std::vector<RankingRow> rows;
};

// The canonical comparison rows, in tie-break order.
std::vector<std::string> canonical_model_order();

// Per-metric integer ranks over exactly 12 rows: ascending for MAPE, MSE,
// ECE, NLL, descending for R^2. Ties keep the input row order, so callers
// pass rows in canonical_model_order().
RankingTable rank_models(const std::vector<LabeledBundle>& bundles);

}  // namespace tsuq::harness

#pragma once

#include "tsuq/curves.hpp"

namespace tsuq::metrics {

// Original-unit scale of the (standardized) target, for metrics that are
// meaningless on z-scores.
struct TargetScale {
    double mean = 0.0;
    double std = 1.0;
};

// One row of a model comparison table.
struct MetricBundle {
    double mape = 0.0;  // percent
    double mse = 0.0;
    double r2 = 0.0;
    double ece = 0.0;
    double nll = 0.0;
};

// 100 * mean |(y - mu) / y| over entries with |y| >= 1e-6. All entries below
// the cutoff -> UndefinedMetric.
double mape(const Tensor& y, const Tensor& mu);

double mse(const Tensor& y, const Tensor& mu);

// 1 - SSE / SStot. Constant y -> UndefinedMetric.
double r2(const Tensor& y, const Tensor& mu);

// Mean per-point Gaussian NLL (log sigma^2 + residual^2 / sigma^2), with
// the 1e-6 sigma floor; negative/NaN sigma rejected.
double nll_metric(const Tensor& y, const Tensor& mu, const Tensor& sigma);

// All five metrics at once. MAPE is computed on de-standardized values via
// `scale`; the rest stay on the standardized scale.
MetricBundle bundle(const Tensor& y, const Tensor& mu, const Tensor& sigma,
                    const TargetScale& scale = {});

}  // namespace tsuq::metrics

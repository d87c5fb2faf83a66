#pragma once

#include <vector>

#include "tsuq/tensor.hpp"

namespace tsuq::metrics {

// Observed central-interval coverage per nominal level.
struct ReliabilityCurve {
    std::vector<double> levels;    // strictly increasing, in (0,1)
    std::vector<double> coverage;  // fraction of |y - mu| <= z_{(1+p)/2} * sigma
};

// MAE over the predictions whose sigma is at least each threshold.
struct ConfidenceErrorCurve {
    std::vector<double> x;         // min-max normalized thresholds in [0,1]
    std::vector<double> mae;
    std::vector<std::size_t> retained;
};

// Inverse standard normal CDF, p in (0,1). Accurate to ~1e-9 relative.
double normal_quantile(double p);

std::vector<double> default_levels();  // 0.1, 0.2, ..., 0.9

// Coverage of the central interval mu +- z_{(1+p)/2} sigma per level.
// Sigma values are floored at 1e-6; negative or NaN sigma is rejected.
ReliabilityCurve reliability_curve(const Tensor& y, const Tensor& mu,
                                   const Tensor& sigma,
                                   const std::vector<double>& levels = default_levels());

// Mean absolute deviation between nominal and observed coverage.
double ece(const ReliabilityCurve& curve);

// S equally spaced thresholds from min sigma to max sigma; at each, the MAE
// over examples with sigma >= threshold (so the first point is the overall
// MAE). Thresholds whose retained set is empty are dropped from the tail.
// A constant sigma collapses to a single point at x = 0.
ConfidenceErrorCurve error_vs_confidence(const Tensor& y, const Tensor& mu,
                                         const Tensor& sigma, std::size_t s = 20);

}  // namespace tsuq::metrics

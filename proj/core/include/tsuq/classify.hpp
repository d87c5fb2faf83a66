#pragma once

#include "tsuq/metrics.hpp"

namespace tsuq::harness {

enum class QualLabel { Good, Moderate, Bad };

std::string to_string(QualLabel l);
QualLabel qual_label_from_string(const std::string& s);

// Spearman rank correlation with average ranks for ties. Either input
// having zero variance gives 0.
double spearman_rho(const std::vector<double>& a, const std::vector<double>& b);

// Horizon-behavior label from per-step metrics (steps 1..n). Five checks:
// MAPE and MSE rise with the step (rho >= 0.5), R^2 falls (rho <= -0.5),
// ECE and NLL stay roughly flat (relative spread <= 0.5, where spread is
// (max - min) / max(|median|, 1e-9)). Good when >= 3 hold, Moderate at 2,
// Bad otherwise. Needs at least 3 steps.
QualLabel classify_horizon(const std::vector<metrics::MetricBundle>& per_step);

// Error-vs-confidence label: f = fraction of consecutive non-decreasing MAE
// steps, d = largest single drop over the curve's range (0 on a flat
// curve). Good when f >= 0.9 and d <= 0.1, Moderate when f >= 0.7, else
// Bad. Needs at least 3 points.
QualLabel classify_conf_error(const metrics::ConfidenceErrorCurve& curve);

}  // namespace tsuq::harness

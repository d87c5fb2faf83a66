#pragma once

#include "tsuq/model.hpp"

namespace tsuq::uq {

using nn::Model;

// Per-example, per-horizon-step predicted mean and standard deviation.
struct PredictiveDistribution {
    Tensor mean;  // n x H
    Tensor std;   // n x H
    std::size_t sample_count = 0;
    std::string method;
};

// M stochastic forward passes; mean/std are the per-output sample moments
// (std with the M-1 denominator). Passes use rng.split(0..M-1), so results
// do not depend on how the caller's stream was consumed before.
PredictiveDistribution mc_predict(Model& model, const Tensor& x, std::size_t m,
                                  RngStream& rng);

// One deterministic pass per member; moments across members (M-1).
PredictiveDistribution ensemble_predict(std::vector<Model>& members, const Tensor& x);

// Single deterministic pass of a Baseline model; std = exp(log_var / 2).
PredictiveDistribution baseline_predict(Model& model, const Tensor& x);

// Moment-matched Gaussian mixture: component means and variances, both
// M x n x H, reduce to mean = avg(mu) and var = avg(vars + mu^2) - mean^2
// (population moments). Returns (mean, std).
std::pair<Tensor, Tensor> combine_mixture(const Tensor& means, const Tensor& vars);

// Tabular dump, one row per (example, step): example_id, step, y_true,
// mean, std. y is n x H.
std::string predictions_csv(const Tensor& y, const PredictiveDistribution& pred);

}  // namespace tsuq::uq

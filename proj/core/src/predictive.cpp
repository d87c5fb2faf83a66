#include "tsuq/predictive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsuq/io_util.hpp"

namespace tsuq::uq {

using nn::ModelConfig;
using nn::UqMethod;
using nn::to_string;

namespace {

PredictiveDistribution reduce_samples(std::vector<Tensor>& samples,
                                      const std::string& method) {
    const std::size_t m = samples.size();
    // Welford's online moments, elementwise over the sample list.
    Tensor mean(samples[0].shape());
    Tensor m2(samples[0].shape());
    for (std::size_t k = 0; k < m; ++k) {
        const Tensor& s = samples[k];
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double delta = s[i] - mean[i];
            mean[i] += delta / static_cast<double>(k + 1);
            m2[i] += delta * (s[i] - mean[i]);
        }
    }
    Tensor std_dev(mean.shape());
    for (std::size_t i = 0; i < std_dev.size(); ++i) {
        std_dev[i] = std::sqrt(m2[i] / static_cast<double>(m - 1));
    }
    require_finite(mean, "predictive mean");
    require_finite(std_dev, "predictive std");
    return {std::move(mean), std::move(std_dev), m, method};
}

}  // namespace

PredictiveDistribution mc_predict(Model& model, const Tensor& x, std::size_t m,
                                  RngStream& rng) {
    if (m < 2) throw InvalidArgument("mc_predict: need at least 2 samples");
    if (!model.config().stochastic_method()) {
        throw WrongMethod("mc_predict: model method '" +
                          to_string(model.config().uq_method) +
                          "' has no stochastic forward pass");
    }
    std::vector<Tensor> samples;
    samples.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        RngStream pass_rng = rng.split(k);
        samples.push_back(model.forward(x, &pass_rng, /*stochastic=*/true));
    }
    return reduce_samples(samples, to_string(model.config().uq_method));
}

PredictiveDistribution ensemble_predict(std::vector<Model>& members,
                                        const Tensor& x) {
    if (members.size() < 2) {
        throw InvalidArgument("ensemble_predict: need at least 2 members");
    }
    const ModelConfig& first = members.front().config();
    if (first.uq_method == UqMethod::Baseline) {
        throw WrongMethod("ensemble_predict: members must emit plain means");
    }
    for (const Model& mdl : members) {
        const ModelConfig& c = mdl.config();
        if (c.architecture != first.architecture || c.uq_method != first.uq_method ||
            c.hidden_units != first.hidden_units ||
            c.hidden_layers != first.hidden_layers || c.horizon != first.horizon ||
            c.window != first.window || c.features != first.features) {
            throw InvalidArgument("ensemble_predict: member configs differ");
        }
    }
    std::vector<Tensor> outputs;
    outputs.reserve(members.size());
    for (Model& mdl : members) {
        outputs.push_back(mdl.forward(x, nullptr, /*stochastic=*/false));
    }
    return reduce_samples(outputs, "ensemble");
}

PredictiveDistribution baseline_predict(Model& model, const Tensor& x) {
    if (model.config().uq_method != UqMethod::Baseline) {
        throw WrongMethod("baseline_predict: model method '" +
                          to_string(model.config().uq_method) + "' is not baseline");
    }
    const std::size_t horizon = model.config().horizon;
    const Tensor out = model.forward(x, nullptr, /*stochastic=*/false);
    Tensor mean = col_range(out, 0, horizon);
    const Tensor log_var = col_range(out, horizon, 2 * horizon);
    Tensor std_dev(mean.shape());
    for (std::size_t i = 0; i < std_dev.size(); ++i) {
        std_dev[i] = std::exp(0.5 * log_var[i]);
    }
    require_finite(mean, "predictive mean");
    require_finite(std_dev, "predictive std");
    return {std::move(mean), std::move(std_dev), 1, "baseline"};
}

std::pair<Tensor, Tensor> combine_mixture(const Tensor& means, const Tensor& vars) {
    require_same_shape(means, vars, "combine_mixture");
    if (means.rank() != 3) {
        throw InvalidArgument("combine_mixture: expected M x n x H tensors, got " +
                              means.shape_str());
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!(vars[i] >= 0.0)) {
            throw InvalidArgument("combine_mixture: negative component variance");
        }
    }
    const std::size_t m = means.dim(0);
    const std::size_t block = means.dim(1) * means.dim(2);
    const double inv_m = 1.0 / static_cast<double>(m);

    Tensor mean({means.dim(1), means.dim(2)});
    Tensor second({means.dim(1), means.dim(2)});
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < block; ++i) {
            const double mu = means[k * block + i];
            mean[i] += mu * inv_m;
            second[i] += (vars[k * block + i] + mu * mu) * inv_m;
        }
    }
    Tensor std_dev(mean.shape());
    for (std::size_t i = 0; i < block; ++i) {
        std_dev[i] = std::sqrt(std::max(second[i] - mean[i] * mean[i], 0.0));
    }
    return {std::move(mean), std::move(std_dev)};
}

std::string predictions_csv(const Tensor& y, const PredictiveDistribution& pred) {
    require_same_shape(y, pred.mean, "predictions_csv");
    std::ostringstream out;
    out << "example_id,step,y_true,mean,std\n";
    for (std::size_t i = 0; i < y.dim(0); ++i) {
        for (std::size_t h = 0; h < y.dim(1); ++h) {
            out << i << ',' << (h + 1) << ',' << fmt_double(y.at(i, h)) << ','
                << fmt_double(pred.mean.at(i, h)) << ','
                << fmt_double(pred.std.at(i, h)) << '\n';
        }
    }
    return out.str();
}

}  // namespace tsuq::uq

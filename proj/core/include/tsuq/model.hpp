#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tsuq/layer.hpp"

namespace tsuq::nn {

enum class Architecture { Mlp, Lstm };
enum class UqMethod { Baseline, Ensemble, Dropout, DropConnect, Bbb, Flipout };

std::string to_string(Architecture a);
std::string to_string(UqMethod m);
Architecture architecture_from_string(const std::string& s);
UqMethod uq_method_from_string(const std::string& s);

// 0.2 for dropout, 0.05 for dropconnect, 0 otherwise.
double default_drop_prob(UqMethod m);

struct ModelConfig {
    Architecture architecture = Architecture::Mlp;
    UqMethod uq_method = UqMethod::Baseline;
    std::size_t hidden_units = 32;
    std::size_t hidden_layers = 2;
    std::size_t horizon = 1;      // output steps, 1..12
    std::size_t window = 12;      // past timesteps per input
    std::size_t features = 1;     // per-timestep feature count
    double drop_prob = -1.0;      // < 0 means "method default"
    std::size_t mc_samples = 50;  // forward passes at prediction time
    std::size_t ensemble_size = 10;

    double effective_drop_prob() const {
        return drop_prob < 0.0 ? default_drop_prob(uq_method) : drop_prob;
    }
    // True for methods whose prediction-time forward passes sample noise.
    bool stochastic_method() const {
        return uq_method == UqMethod::Dropout || uq_method == UqMethod::DropConnect ||
               uq_method == UqMethod::Bbb || uq_method == UqMethod::Flipout;
    }
    // "mlp_baseline" etc., used for report directories and row labels.
    std::string label() const;
};

// Throws ConfigError on out-of-range fields.
void validate_config(const ModelConfig& cfg);

// A layer stack plus the config that built it. MLP stacks take flat
// (batch x window*features) inputs; rank-3 (batch x window x features)
// inputs are flattened automatically. LSTM stacks take rank-3 inputs.
class Model {
public:
    Model(ModelConfig cfg, std::vector<std::unique_ptr<Layer>> layers);
    Model(Model&&) = default;
    Model& operator=(Model&&) = default;

    const ModelConfig& config() const { return cfg_; }

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic);
    // d loss / d input, shaped like the (possibly flattened) forward input.
    Tensor backward(const Tensor& d_out);

    std::vector<Tensor*> params();
    std::vector<Tensor*> grads();
    void zero_grad();
    std::size_t param_count();

    // Sum of layer KL divergences against a N(0, prior_std^2) prior.
    double kl(double prior_std) const;
    // Adds weight * dKL/dparam into the gradient buffers.
    void add_kl_grads(double weight, double prior_std);

    std::size_t layer_count() const { return layers_.size(); }
    Layer& layer(std::size_t i) { return *layers_.at(i); }
    const Layer& layer(std::size_t i) const { return *layers_.at(i); }

private:
    ModelConfig cfg_;
    std::vector<std::unique_ptr<Layer>> layers_;
};

// Assembles the layer stack for a config:
//   MLP:  flat input -> hidden dense x hidden_layers (relu) -> output head
//   LSTM: lstm(units, seq) -> lstm(units, last) -> [mask if Dropout] -> head
// Hidden/output dense layers use the method's stochastic variant; Baseline
// and Ensemble use plain dense. The Baseline head emits (mu, log_var) pairs,
// every other head emits horizon means.
Model build_model(const ModelConfig& cfg, RngStream& rng);

}  // namespace tsuq::nn

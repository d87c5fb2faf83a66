#include "tsuq/model.hpp"

#include "tsuq/dense.hpp"
#include "tsuq/lstm.hpp"
#include "tsuq/variational.hpp"

namespace tsuq::nn {

std::string to_string(Architecture a) {
    return a == Architecture::Mlp ? "mlp" : "lstm";
}

std::string to_string(UqMethod m) {
    switch (m) {
        case UqMethod::Baseline: return "baseline";
        case UqMethod::Ensemble: return "ensemble";
        case UqMethod::Dropout: return "dropout";
        case UqMethod::DropConnect: return "dropconnect";
        case UqMethod::Bbb: return "bbb";
        case UqMethod::Flipout: return "flipout";
    }
    return "?";
}

Architecture architecture_from_string(const std::string& s) {
    if (s == "mlp") return Architecture::Mlp;
    if (s == "lstm") return Architecture::Lstm;
    throw ConfigError("unknown architecture '" + s + "' (expected mlp|lstm)");
}

UqMethod uq_method_from_string(const std::string& s) {
    if (s == "baseline") return UqMethod::Baseline;
    if (s == "ensemble") return UqMethod::Ensemble;
    if (s == "dropout") return UqMethod::Dropout;
    if (s == "dropconnect") return UqMethod::DropConnect;
    if (s == "bbb") return UqMethod::Bbb;
    if (s == "flipout") return UqMethod::Flipout;
    throw ConfigError("unknown uq_method '" + s +
                      "' (expected baseline|ensemble|dropout|dropconnect|bbb|flipout)");
}

double default_drop_prob(UqMethod m) {
    if (m == UqMethod::Dropout) return 0.2;
    if (m == UqMethod::DropConnect) return 0.05;
    return 0.0;
}

std::string ModelConfig::label() const {
    return to_string(architecture) + "_" + to_string(uq_method);
}

void validate_config(const ModelConfig& cfg) {
    if (cfg.hidden_units < 1) throw ConfigError("hidden_units must be >= 1");
    if (cfg.hidden_layers < 1) throw ConfigError("hidden_layers must be >= 1");
    if (cfg.horizon < 1 || cfg.horizon > 12) {
        throw ConfigError("horizon must be in [1,12], got " +
                          std::to_string(cfg.horizon));
    }
    if (cfg.window < 1) throw ConfigError("window must be >= 1");
    if (cfg.features < 1) throw ConfigError("features must be >= 1");
    const double p = cfg.effective_drop_prob();
    if (p < 0.0 || p >= 1.0) {
        throw ConfigError("drop_prob must be in [0,1), got " + std::to_string(p));
    }
    if (cfg.mc_samples < 1) throw ConfigError("mc_samples must be >= 1");
    if (cfg.ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
}

Model::Model(ModelConfig cfg, std::vector<std::unique_ptr<Layer>> layers)
    : cfg_(std::move(cfg)), layers_(std::move(layers)) {}

Tensor Model::forward(const Tensor& x, RngStream* rng, bool stochastic) {
    Tensor h = x;
    if (cfg_.architecture == Architecture::Mlp && h.rank() == 3) {
        h = h.reshaped({h.dim(0), h.dim(1) * h.dim(2)});
    }
    for (auto& l : layers_) h = l->forward(h, rng, stochastic);
    return h;
}

Tensor Model::backward(const Tensor& d_out) {
    Tensor d = d_out;
    for (std::size_t i = layers_.size(); i-- > 0;) d = layers_[i]->backward(d);
    return d;
}

std::vector<Tensor*> Model::params() {
    std::vector<Tensor*> out;
    for (auto& l : layers_) {
        for (Tensor* t : l->params()) out.push_back(t);
    }
    return out;
}

std::vector<Tensor*> Model::grads() {
    std::vector<Tensor*> out;
    for (auto& l : layers_) {
        for (Tensor* t : l->grads()) out.push_back(t);
    }
    return out;
}

void Model::zero_grad() {
    for (auto& l : layers_) l->zero_grad();
}

std::size_t Model::param_count() {
    std::size_t n = 0;
    for (auto& l : layers_) {
        for (Tensor* t : l->params()) n += t->size();
    }
    return n;
}

double Model::kl(double prior_std) const {
    double acc = 0.0;
    for (const auto& l : layers_) acc += l->kl(prior_std);
    return acc;
}

void Model::add_kl_grads(double weight, double prior_std) {
    for (auto& l : layers_) l->add_kl_grad(weight, prior_std);
}

namespace {

// Dense layer of the method's flavor; plain dense for Baseline/Ensemble.
std::unique_ptr<Layer> make_dense(const ModelConfig& cfg, std::size_t in,
                                  std::size_t out, Activation act,
                                  RngStream& rng) {
    switch (cfg.uq_method) {
        case UqMethod::Baseline:
        case UqMethod::Ensemble:
            return std::make_unique<DenseLayer>(in, out, act, rng);
        case UqMethod::Dropout:
            return std::make_unique<DropoutDenseLayer>(in, out, act,
                                                       cfg.effective_drop_prob(), rng);
        case UqMethod::DropConnect:
            return std::make_unique<DropConnectDenseLayer>(
                in, out, act, cfg.effective_drop_prob(), rng);
        case UqMethod::Bbb:
            return std::make_unique<VariationalDenseLayer>(in, out, act, rng);
        case UqMethod::Flipout:
            return std::make_unique<FlipoutDenseLayer>(in, out, act, rng);
    }
    throw ConfigError("unknown uq_method");
}

std::unique_ptr<Layer> make_head(const ModelConfig& cfg, std::size_t in,
                                 RngStream& rng) {
    if (cfg.uq_method == UqMethod::Baseline) {
        return std::make_unique<GaussianHeadLayer>(in, cfg.horizon, rng);
    }
    return make_dense(cfg, in, cfg.horizon, Activation::Identity, rng);
}

}  // namespace

Model build_model(const ModelConfig& cfg, RngStream& rng) {
    validate_config(cfg);
    std::vector<std::unique_ptr<Layer>> layers;

    if (cfg.architecture == Architecture::Mlp) {
        std::size_t in = cfg.window * cfg.features;
        for (std::size_t i = 0; i < cfg.hidden_layers; ++i) {
            layers.push_back(make_dense(cfg, in, cfg.hidden_units,
                                        Activation::Relu, rng));
            in = cfg.hidden_units;
        }
        layers.push_back(make_head(cfg, in, rng));
    } else {
        layers.push_back(std::make_unique<LstmLayer>(cfg.features, cfg.hidden_units,
                                                     /*return_sequences=*/true, rng));
        layers.push_back(std::make_unique<LstmLayer>(cfg.hidden_units, cfg.hidden_units,
                                                     /*return_sequences=*/false, rng));
        if (cfg.uq_method == UqMethod::Dropout) {
            layers.push_back(std::make_unique<DropoutLayer>(cfg.effective_drop_prob()));
        }
        layers.push_back(make_head(cfg, cfg.hidden_units, rng));
    }
    return Model(cfg, std::move(layers));
}

}  // namespace tsuq::nn

#pragma once

#include "tsuq/layer.hpp"

namespace tsuq::nn {

struct DenseParams {
    Tensor w;  // in x out
    Tensor b;  // out
};

// Glorot-uniform weights, zero bias.
DenseParams init_dense_params(std::size_t in, std::size_t out, RngStream& rng);

// activation(x·W + b)
Tensor dense_forward(const Tensor& x, const DenseParams& p,
                     Activation act = Activation::Identity);

// Dense layer whose output activations are masked by an inverted-dropout
// Bernoulli(1-p) mask when stochastic.
Tensor dropout_forward(const Tensor& x, const DenseParams& p, double drop_prob,
                       RngStream& rng, bool stochastic,
                       Activation act = Activation::Identity);

// Dense layer whose weights and bias are masked (and rescaled by 1/(1-p))
// when stochastic.
Tensor dropconnect_forward(const Tensor& x, const DenseParams& p, double drop_prob,
                           RngStream& rng, bool stochastic,
                           Activation act = Activation::Identity);

class DenseLayer : public Layer {
public:
    DenseLayer(std::size_t in, std::size_t out, Activation act, RngStream& rng);
    DenseLayer(DenseParams p, Activation act);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;
    std::vector<Tensor*> params() override { return {&p_.w, &p_.b}; }
    std::vector<Tensor*> grads() override { return {&g_.w, &g_.b}; }
    std::vector<std::string> param_names() const override { return {"w", "b"}; }
    std::string kind() const override { return "dense"; }

    const DenseParams& dense_params() const { return p_; }
    DenseParams& dense_params() { return p_; }
    Activation activation() const { return act_; }

private:
    DenseParams p_, g_;
    Activation act_;
    Tensor x_, z_;
};

class DropoutDenseLayer : public Layer {
public:
    DropoutDenseLayer(std::size_t in, std::size_t out, Activation act,
                      double drop_prob, RngStream& rng);
    DropoutDenseLayer(DenseParams p, Activation act, double drop_prob);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;
    std::vector<Tensor*> params() override { return {&p_.w, &p_.b}; }
    std::vector<Tensor*> grads() override { return {&g_.w, &g_.b}; }
    std::vector<std::string> param_names() const override { return {"w", "b"}; }
    std::string kind() const override { return "dropout_dense"; }

    double drop_prob() const { return drop_prob_; }

private:
    DenseParams p_, g_;
    Activation act_;
    double drop_prob_;
    Tensor x_, z_, mask_;
    bool masked_ = false;
};

class DropConnectDenseLayer : public Layer {
public:
    DropConnectDenseLayer(std::size_t in, std::size_t out, Activation act,
                          double drop_prob, RngStream& rng);
    DropConnectDenseLayer(DenseParams p, Activation act, double drop_prob);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;
    std::vector<Tensor*> params() override { return {&p_.w, &p_.b}; }
    std::vector<Tensor*> grads() override { return {&g_.w, &g_.b}; }
    std::vector<std::string> param_names() const override { return {"w", "b"}; }
    std::string kind() const override { return "dropconnect_dense"; }

    double drop_prob() const { return drop_prob_; }

private:
    DenseParams p_, g_;
    Activation act_;
    double drop_prob_;
    Tensor x_, z_, w_eff_, mask_w_, mask_b_;
    bool masked_ = false;
};

// Parameter-free inverted-dropout mask on activations. Used between the last
// LSTM stage and the output layer of recurrent MC-Dropout models.
class DropoutLayer : public Layer {
public:
    explicit DropoutLayer(double drop_prob);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;
    std::vector<Tensor*> params() override { return {}; }
    std::vector<Tensor*> grads() override { return {}; }
    std::vector<std::string> param_names() const override { return {}; }
    std::string kind() const override { return "dropout"; }

private:
    double drop_prob_;
    Tensor mask_;
    bool masked_ = false;
};

// Dense layer with 2H outputs read as (mu, log_var) per horizon step;
// log_var columns are clamped to [-10, 10].
class GaussianHeadLayer : public Layer {
public:
    static constexpr double kLogVarMin = -10.0;
    static constexpr double kLogVarMax = 10.0;

    GaussianHeadLayer(std::size_t in, std::size_t horizon, RngStream& rng);
    GaussianHeadLayer(DenseParams p, std::size_t horizon);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;
    std::vector<Tensor*> params() override { return {&p_.w, &p_.b}; }
    std::vector<Tensor*> grads() override { return {&g_.w, &g_.b}; }
    std::vector<std::string> param_names() const override { return {"w", "b"}; }
    std::string kind() const override { return "gaussian_head"; }

    std::size_t horizon() const { return horizon_; }

private:
    DenseParams p_, g_;
    std::size_t horizon_;
    Tensor x_, z_;
};

}  // namespace tsuq::nn

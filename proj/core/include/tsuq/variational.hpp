#pragma once

#include "tsuq/dense.hpp"

namespace tsuq::nn {

// Gaussian posterior over dense weights: W ~ N(w_mu, softplus(w_rho)^2),
// same for the bias.
struct VariationalDenseParams {
    Tensor w_mu, w_rho;  // in x out
    Tensor b_mu, b_rho;  // out
};

// Glorot-uniform means; rho set so that softplus(rho) == init_sigma.
VariationalDenseParams init_variational_params(std::size_t in, std::size_t out,
                                               RngStream& rng,
                                               double init_sigma = 0.05);

// Sum over all weights and biases of KL(N(mu_q, sigma_q^2) || N(0, prior_std^2)).
double kl_gaussian(const VariationalDenseParams& p, double prior_std);

// One weight/bias sample shared by the whole batch (reparameterized).
Tensor bbb_dense_forward(const Tensor& x, const VariationalDenseParams& p,
                         RngStream& rng, bool stochastic,
                         Activation act = Activation::Identity);

// Shared perturbation decorrelated across batch rows with per-example
// Rademacher sign vectors.
Tensor flipout_dense_forward(const Tensor& x, const VariationalDenseParams& p,
                             RngStream& rng, bool stochastic,
                             Activation act = Activation::Identity);

class VariationalDenseLayer : public Layer {
public:
    VariationalDenseLayer(std::size_t in, std::size_t out, Activation act,
                          RngStream& rng);
    VariationalDenseLayer(VariationalDenseParams p, Activation act);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;
    std::vector<Tensor*> params() override {
        return {&p_.w_mu, &p_.w_rho, &p_.b_mu, &p_.b_rho};
    }
    std::vector<Tensor*> grads() override {
        return {&g_.w_mu, &g_.w_rho, &g_.b_mu, &g_.b_rho};
    }
    std::vector<std::string> param_names() const override {
        return {"w_mu", "w_rho", "b_mu", "b_rho"};
    }
    std::string kind() const override { return "variational_dense"; }

    double kl(double prior_std) const override;
    void add_kl_grad(double weight, double prior_std) override;

    const VariationalDenseParams& variational_params() const { return p_; }

private:
    VariationalDenseParams p_, g_;
    Activation act_;
    Tensor x_, z_, w_eff_, eps_w_, eps_b_;
    bool sampled_ = false;
};

class FlipoutDenseLayer : public Layer {
public:
    FlipoutDenseLayer(std::size_t in, std::size_t out, Activation act,
                      RngStream& rng);
    FlipoutDenseLayer(VariationalDenseParams p, Activation act);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;
    std::vector<Tensor*> params() override {
        return {&p_.w_mu, &p_.w_rho, &p_.b_mu, &p_.b_rho};
    }
    std::vector<Tensor*> grads() override {
        return {&g_.w_mu, &g_.w_rho, &g_.b_mu, &g_.b_rho};
    }
    std::vector<std::string> param_names() const override {
        return {"w_mu", "w_rho", "b_mu", "b_rho"};
    }
    std::string kind() const override { return "flipout_dense"; }

    double kl(double prior_std) const override;
    void add_kl_grad(double weight, double prior_std) override;

private:
    VariationalDenseParams p_, g_;
    Activation act_;
    Tensor x_, z_, eps_w_, eps_b_, delta_w_, delta_b_;
    Tensor sign_in_, sign_out_, sign_bias_;  // per-example Rademacher vectors
    bool sampled_ = false;
};

namespace detail {
void accumulate_kl_grad(const VariationalDenseParams& p, double weight,
                        double prior_std, VariationalDenseParams& g);
}

}  // namespace tsuq::nn

#pragma once

#include <string>
#include <vector>

#include "tsuq/rng.hpp"
#include "tsuq/tensor.hpp"

namespace tsuq::nn {

enum class Activation { Identity, Relu };

Tensor apply_activation(const Tensor& z, Activation act);
// dy ∘ act'(z), evaluated at the cached pre-activation z.
Tensor activation_backward(const Tensor& z, const Tensor& dy, Activation act);

double softplus(double x);
double softplus_inv(double y);   // value r with softplus(r) == y
double sigmoid(double x);
Tensor softplus(const Tensor& x);

// A trainable stage of a model. forward() caches whatever backward() needs;
// backward() consumes the most recent forward state, accumulates parameter
// gradients and returns the gradient w.r.t. the layer input.
//
// When `stochastic` is true, layers that sample noise draw it from `rng`
// (fresh per call). Deterministic layers ignore both arguments.
class Layer {
public:
    virtual ~Layer() = default;

    virtual Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) = 0;
    virtual Tensor backward(const Tensor& dy) = 0;

    virtual std::vector<Tensor*> params() = 0;
    virtual std::vector<Tensor*> grads() = 0;
    virtual std::vector<std::string> param_names() const = 0;
    virtual std::string kind() const = 0;

    // KL(q(w) || prior) summed over this layer's weights; zero for
    // non-variational layers.
    virtual double kl(double prior_std) const {
        (void)prior_std;
        return 0.0;
    }
    // Adds weight * dKL/dparam to the gradient accumulators.
    virtual void add_kl_grad(double weight, double prior_std) {
        (void)weight;
        (void)prior_std;
    }

    void zero_grad();
};

}  // namespace tsuq::nn

#pragma once

#include <cstddef>
#include <vector>

#include "tsuq/tensor.hpp"

namespace tsuq::nn {

// First/second moment accumulators for one parameter tensor.
struct AdamState {
    Tensor m, v;
    explicit AdamState(const std::vector<std::size_t>& shape) : m(shape), v(shape) {}
};

// One bias-corrected Adam update, in place. t is the 1-based step count.
void adam_step(Tensor& param, const Tensor& grad, AdamState& state, double lr,
               std::size_t t, double beta1 = 0.9, double beta2 = 0.999,
               double eps = 1e-8);

// Adam bound to a fixed set of parameter/gradient tensor pairs
// (typically a model's params()/grads()).
class AdamOptimizer {
public:
    AdamOptimizer(std::vector<Tensor*> params, std::vector<Tensor*> grads,
                  double lr);

    // Applies one update from the current gradients; advances the step count.
    void step();

    std::size_t steps_taken() const { return t_; }

private:
    std::vector<Tensor*> params_;
    std::vector<Tensor*> grads_;
    std::vector<AdamState> states_;
    double lr_;
    std::size_t t_ = 0;
};

}  // namespace tsuq::nn

#include "tsuq/adam.hpp"

#include <cmath>

#include "tsuq/error.hpp"

namespace tsuq::nn {

void adam_step(Tensor& param, const Tensor& grad, AdamState& state, double lr,
               std::size_t t, double beta1, double beta2, double eps) {
    if (t < 1) throw InvalidArgument("adam_step: step count must be >= 1");
    require_same_shape(param, grad, "adam_step");
    require_same_shape(param, state.m, "adam_step");
    require_same_shape(param, state.v, "adam_step");

    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double g = grad[i];
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * g;
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * g * g;
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        param[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
}

AdamOptimizer::AdamOptimizer(std::vector<Tensor*> params,
                             std::vector<Tensor*> grads, double lr)
    : params_(std::move(params)), grads_(std::move(grads)), lr_(lr) {
    if (params_.size() != grads_.size()) {
        throw InvalidArgument("AdamOptimizer: params/grads count mismatch");
    }
    if (lr_ <= 0.0) throw InvalidArgument("AdamOptimizer: learning rate must be > 0");
    states_.reserve(params_.size());
    for (const Tensor* p : params_) states_.emplace_back(p->shape());
}

void AdamOptimizer::step() {
    ++t_;
    for (std::size_t i = 0; i < params_.size(); ++i) {
        adam_step(*params_[i], *grads_[i], states_[i], lr_, t_);
    }
}

}  // namespace tsuq::nn

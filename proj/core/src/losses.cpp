#include "tsuq/losses.hpp"

#include <cmath>

namespace tsuq::nn {

double mse_loss(const Tensor& mu, const Tensor& y) {
    require_same_shape(mu, y, "mse_loss");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double r = mu[i] - y[i];
        acc += r * r;
    }
    return acc / static_cast<double>(mu.size());
}

Tensor mse_grad(const Tensor& mu, const Tensor& y) {
    require_same_shape(mu, y, "mse_grad");
    Tensor g(mu.shape());
    const double inv_n = 1.0 / static_cast<double>(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        g[i] = 2.0 * (mu[i] - y[i]) * inv_n;
    }
    return g;
}

double gaussian_nll_loss(const Tensor& mu, const Tensor& log_var, const Tensor& y) {
    require_same_shape(mu, y, "gaussian_nll_loss");
    require_same_shape(mu, log_var, "gaussian_nll_loss");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double r = mu[i] - y[i];
        acc += log_var[i] + r * r * std::exp(-log_var[i]);
    }
    return acc / static_cast<double>(mu.size());
}

std::pair<Tensor, Tensor> gaussian_nll_grads(const Tensor& mu, const Tensor& log_var,
                                             const Tensor& y) {
    require_same_shape(mu, y, "gaussian_nll_grads");
    require_same_shape(mu, log_var, "gaussian_nll_grads");
    Tensor d_mu(mu.shape());
    Tensor d_lv(mu.shape());
    const double inv_n = 1.0 / static_cast<double>(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double r = mu[i] - y[i];
        const double inv_var = std::exp(-log_var[i]);
        d_mu[i] = 2.0 * r * inv_var * inv_n;
        d_lv[i] = (1.0 - r * r * inv_var) * inv_n;
    }
    return {std::move(d_mu), std::move(d_lv)};
}

}  // namespace tsuq::nn

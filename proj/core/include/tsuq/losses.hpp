#pragma once

#include <utility>

#include "tsuq/tensor.hpp"

namespace tsuq::nn {

// Mean squared error over all elements.
double mse_loss(const Tensor& mu, const Tensor& y);
// d mse / d mu = 2(mu - y) / N.
Tensor mse_grad(const Tensor& mu, const Tensor& y);

// Heteroscedastic Gaussian negative log-likelihood (per-element, averaged):
//   N^-1 . sum_i ( log_var_i + (mu_i - y_i)^2 * exp(-log_var_i) )
// The 2*pi constant is dropped.
double gaussian_nll_loss(const Tensor& mu, const Tensor& log_var, const Tensor& y);
// Gradients w.r.t. (mu, log_var).
std::pair<Tensor, Tensor> gaussian_nll_grads(const Tensor& mu, const Tensor& log_var,
                                             const Tensor& y);

}  // namespace tsuq::nn

#pragma once

#include <functional>

#include "tsuq/tensor.hpp"

namespace tsuq {

// Central-difference gradient of a scalar-valued function:
//   g_i = (f(x + eps*e_i) - f(x - eps*e_i)) / (2*eps)
// Throws NumericError if any evaluation of f is non-finite.
Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f,
                        const Tensor& x, double eps);

// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor); the comparison metric used
// by all gradient checks.
double max_rel_error(const Tensor& a, const Tensor& b, double floor = 1e-6);

}  // namespace tsuq

#include "tsuq/layer.hpp"

#include <cmath>

namespace tsuq::nn {

Tensor apply_activation(const Tensor& z, Activation act) {
    if (act == Activation::Identity) return z;
    Tensor y = z;
    for (double& v : y.data()) v = v > 0.0 ? v : 0.0;
    return y;
}

Tensor activation_backward(const Tensor& z, const Tensor& dy, Activation act) {
    if (act == Activation::Identity) return dy;
    require_same_shape(z, dy, "activation_backward");
    Tensor dz = dy;
    auto pz = z.data();
    auto pd = dz.data();
    for (std::size_t i = 0; i < pd.size(); ++i) {
        if (pz[i] <= 0.0) pd[i] = 0.0;
    }
    return dz;
}

double softplus(double x) {
    // log(1 + e^x), stable on both tails.
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double softplus_inv(double y) {
    // x with softplus(x) == y, y > 0.
    return std::log(std::expm1(y));
}

double sigmoid(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Tensor softplus(const Tensor& x) {
    Tensor y = x;
    for (double& v : y.data()) v = softplus(v);
    return y;
}

void Layer::zero_grad() {
    for (Tensor* g : grads()) {
        for (double& v : g->data()) v = 0.0;
    }
}

}  // namespace tsuq::nn

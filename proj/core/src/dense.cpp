#include "tsuq/dense.hpp"

#include <cmath>

namespace tsuq::nn {

namespace {

void check_dense_shapes(const Tensor& x, const DenseParams& p) {
    if (x.rank() != 2 || p.w.rank() != 2 || p.b.rank() != 1 ||
        x.dim(1) != p.w.dim(0) || p.w.dim(1) != p.b.dim(0)) {
        throw InvalidArgument("dense: incompatible shapes x=" + x.shape_str() +
                              " w=" + p.w.shape_str() + " b=" + p.b.shape_str());
    }
}

void check_drop_prob(double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw InvalidArgument("drop_prob must be in [0, 1)");
    }
}

}  // namespace

DenseParams init_dense_params(std::size_t in, std::size_t out, RngStream& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    DenseParams p;
    p.w = sample_uniform({in, out}, limit, rng);
    p.b = Tensor({out});
    return p;
}

Tensor dense_forward(const Tensor& x, const DenseParams& p, Activation act) {
    check_dense_shapes(x, p);
    return apply_activation(add_rowwise(matmul(x, p.w), p.b), act);
}

Tensor dropout_forward(const Tensor& x, const DenseParams& p, double drop_prob,
                       RngStream& rng, bool stochastic, Activation act) {
    DropoutDenseLayer layer(p, act, drop_prob);
    return layer.forward(x, &rng, stochastic);
}

Tensor dropconnect_forward(const Tensor& x, const DenseParams& p, double drop_prob,
                           RngStream& rng, bool stochastic, Activation act) {
    DropConnectDenseLayer layer(p, act, drop_prob);
    return layer.forward(x, &rng, stochastic);
}

// --- DenseLayer ----------------------------------------------------------

DenseLayer::DenseLayer(std::size_t in, std::size_t out, Activation act,
                       RngStream& rng)
    : p_(init_dense_params(in, out, rng)), act_(act) {
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

DenseLayer::DenseLayer(DenseParams p, Activation act)
    : p_(std::move(p)), act_(act) {
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

Tensor DenseLayer::forward(const Tensor& x, RngStream*, bool) {
    check_dense_shapes(x, p_);
    x_ = x;
    z_ = add_rowwise(matmul(x, p_.w), p_.b);
    return apply_activation(z_, act_);
}

Tensor DenseLayer::backward(const Tensor& dy) {
    const Tensor dz = activation_backward(z_, dy, act_);
    add_inplace(g_.w, matmul(transpose(x_), dz));
    add_inplace(g_.b, sum_rows(dz));
    return matmul(dz, transpose(p_.w));
}

// --- DropoutDenseLayer ---------------------------------------------------

DropoutDenseLayer::DropoutDenseLayer(std::size_t in, std::size_t out,
                                     Activation act, double drop_prob,
                                     RngStream& rng)
    : p_(init_dense_params(in, out, rng)), act_(act), drop_prob_(drop_prob) {
    check_drop_prob(drop_prob);
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

DropoutDenseLayer::DropoutDenseLayer(DenseParams p, Activation act,
                                     double drop_prob)
    : p_(std::move(p)), act_(act), drop_prob_(drop_prob) {
    check_drop_prob(drop_prob);
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

Tensor DropoutDenseLayer::forward(const Tensor& x, RngStream* rng,
                                  bool stochastic) {
    check_dense_shapes(x, p_);
    x_ = x;
    z_ = add_rowwise(matmul(x, p_.w), p_.b);
    Tensor y = apply_activation(z_, act_);
    masked_ = stochastic && drop_prob_ > 0.0;
    if (masked_) {
        if (!rng) throw InvalidArgument("dropout: stochastic pass needs an rng");
        const double keep = 1.0 - drop_prob_;
        mask_ = sample_bernoulli_mask(y.shape(), keep, *rng);
        scale_inplace(mask_, 1.0 / keep);
        mul_inplace(y, mask_);
    }
    return y;
}

Tensor DropoutDenseLayer::backward(const Tensor& dy) {
    Tensor d = dy;
    if (masked_) mul_inplace(d, mask_);
    const Tensor dz = activation_backward(z_, d, act_);
    add_inplace(g_.w, matmul(transpose(x_), dz));
    add_inplace(g_.b, sum_rows(dz));
    return matmul(dz, transpose(p_.w));
}

// --- DropConnectDenseLayer -------------------------------------------------

DropConnectDenseLayer::DropConnectDenseLayer(std::size_t in, std::size_t out,
                                             Activation act, double drop_prob,
                                             RngStream& rng)
    : p_(init_dense_params(in, out, rng)), act_(act), drop_prob_(drop_prob) {
    check_drop_prob(drop_prob);
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

DropConnectDenseLayer::DropConnectDenseLayer(DenseParams p, Activation act,
                                             double drop_prob)
    : p_(std::move(p)), act_(act), drop_prob_(drop_prob) {
    check_drop_prob(drop_prob);
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

Tensor DropConnectDenseLayer::forward(const Tensor& x, RngStream* rng,
                                      bool stochastic) {
    check_dense_shapes(x, p_);
    x_ = x;
    masked_ = stochastic && drop_prob_ > 0.0;
    if (masked_) {
        if (!rng) throw InvalidArgument("dropconnect: stochastic pass needs an rng");
        const double keep = 1.0 - drop_prob_;
        mask_w_ = sample_bernoulli_mask(p_.w.shape(), keep, *rng);
        scale_inplace(mask_w_, 1.0 / keep);
        mask_b_ = sample_bernoulli_mask(p_.b.shape(), keep, *rng);
        scale_inplace(mask_b_, 1.0 / keep);
        w_eff_ = mul(p_.w, mask_w_);
        z_ = add_rowwise(matmul(x, w_eff_), mul(p_.b, mask_b_));
    } else {
        w_eff_ = p_.w;
        z_ = add_rowwise(matmul(x, p_.w), p_.b);
    }
    return apply_activation(z_, act_);
}

Tensor DropConnectDenseLayer::backward(const Tensor& dy) {
    const Tensor dz = activation_backward(z_, dy, act_);
    Tensor dw = matmul(transpose(x_), dz);
    Tensor db = sum_rows(dz);
    if (masked_) {
        mul_inplace(dw, mask_w_);
        mul_inplace(db, mask_b_);
    }
    add_inplace(g_.w, dw);
    add_inplace(g_.b, db);
    return matmul(dz, transpose(w_eff_));
}

// --- DropoutLayer ----------------------------------------------------------

DropoutLayer::DropoutLayer(double drop_prob) : drop_prob_(drop_prob) {
    check_drop_prob(drop_prob);
}

Tensor DropoutLayer::forward(const Tensor& x, RngStream* rng, bool stochastic) {
    masked_ = stochastic && drop_prob_ > 0.0;
    if (!masked_) return x;
    if (!rng) throw InvalidArgument("dropout: stochastic pass needs an rng");
    const double keep = 1.0 - drop_prob_;
    mask_ = sample_bernoulli_mask(x.shape(), keep, *rng);
    scale_inplace(mask_, 1.0 / keep);
    return mul(x, mask_);
}

Tensor DropoutLayer::backward(const Tensor& dy) {
    if (!masked_) return dy;
    return mul(dy, mask_);
}

// --- GaussianHeadLayer -------------------------------------------------------

GaussianHeadLayer::GaussianHeadLayer(std::size_t in, std::size_t horizon,
                                     RngStream& rng)
    : p_(init_dense_params(in, 2 * horizon, rng)), horizon_(horizon) {
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

GaussianHeadLayer::GaussianHeadLayer(DenseParams p, std::size_t horizon)
    : p_(std::move(p)), horizon_(horizon) {
    if (p_.w.dim(1) != 2 * horizon) {
        throw InvalidArgument("gaussian head: weight output dim must be 2*horizon");
    }
    g_.w = Tensor(p_.w.shape());
    g_.b = Tensor(p_.b.shape());
}

Tensor GaussianHeadLayer::forward(const Tensor& x, RngStream*, bool) {
    check_dense_shapes(x, p_);
    x_ = x;
    z_ = add_rowwise(matmul(x, p_.w), p_.b);
    Tensor y = z_;
    const std::size_t n = y.dim(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = horizon_; j < 2 * horizon_; ++j) {
            double& v = y.at(i, j);
            v = std::min(kLogVarMax, std::max(kLogVarMin, v));
        }
    }
    return y;
}

Tensor GaussianHeadLayer::backward(const Tensor& dy) {
    // Zero gradient through saturated log-var outputs.
    Tensor dz = dy;
    const std::size_t n = dz.dim(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = horizon_; j < 2 * horizon_; ++j) {
            const double v = z_.at(i, j);
            if (v < kLogVarMin || v > kLogVarMax) dz.at(i, j) = 0.0;
        }
    }
    add_inplace(g_.w, matmul(transpose(x_), dz));
    add_inplace(g_.b, sum_rows(dz));
    return matmul(dz, transpose(p_.w));
}

}  // namespace tsuq::nn

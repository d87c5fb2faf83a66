#include "tsuq/variational.hpp"

#include <cmath>

namespace tsuq::nn {

namespace {

void check_shapes(const Tensor& x, const VariationalDenseParams& p) {
    if (x.rank() != 2 || p.w_mu.rank() != 2 || x.dim(1) != p.w_mu.dim(0) ||
        !p.w_mu.same_shape(p.w_rho) || p.b_mu.rank() != 1 ||
        !p.b_mu.same_shape(p.b_rho) || p.w_mu.dim(1) != p.b_mu.dim(0)) {
        throw InvalidArgument("variational dense: incompatible shapes x=" +
                              x.shape_str() + " w_mu=" + p.w_mu.shape_str());
    }
}

double kl_one(double mu, double sigma, double prior_std) {
    return std::log(prior_std / sigma) +
           (sigma * sigma + mu * mu) / (2.0 * prior_std * prior_std) - 0.5;
}

void zero_like(VariationalDenseParams& g, const VariationalDenseParams& p) {
    g.w_mu = Tensor(p.w_mu.shape());
    g.w_rho = Tensor(p.w_rho.shape());
    g.b_mu = Tensor(p.b_mu.shape());
    g.b_rho = Tensor(p.b_rho.shape());
}

}  // namespace

VariationalDenseParams init_variational_params(std::size_t in, std::size_t out,
                                               RngStream& rng, double init_sigma) {
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    VariationalDenseParams p;
    p.w_mu = sample_uniform({in, out}, limit, rng);
    p.w_rho = Tensor::full({in, out}, softplus_inv(init_sigma));
    p.b_mu = Tensor({out});
    p.b_rho = Tensor::full({out}, softplus_inv(init_sigma));
    return p;
}

double kl_gaussian(const VariationalDenseParams& p, double prior_std) {
    if (!(prior_std > 0.0)) {
        throw InvalidArgument("kl_gaussian: prior_std must be > 0");
    }
    double total = 0.0;
    auto accumulate = [&](const Tensor& mu, const Tensor& rho) {
        auto pm = mu.data();
        auto pr = rho.data();
        for (std::size_t i = 0; i < pm.size(); ++i) {
            total += kl_one(pm[i], softplus(pr[i]), prior_std);
        }
    };
    accumulate(p.w_mu, p.w_rho);
    accumulate(p.b_mu, p.b_rho);
    return total;
}

namespace detail {

void accumulate_kl_grad(const VariationalDenseParams& p, double weight,
                        double prior_std, VariationalDenseParams& g) {
    const double inv_var = 1.0 / (prior_std * prior_std);
    auto accumulate = [&](const Tensor& mu, const Tensor& rho, Tensor& gmu,
                          Tensor& grho) {
        auto pm = mu.data();
        auto pr = rho.data();
        auto qm = gmu.data();
        auto qr = grho.data();
        for (std::size_t i = 0; i < pm.size(); ++i) {
            const double sig = softplus(pr[i]);
            qm[i] += weight * pm[i] * inv_var;
            qr[i] += weight * (-1.0 / sig + sig * inv_var) * sigmoid(pr[i]);
        }
    };
    accumulate(p.w_mu, p.w_rho, g.w_mu, g.w_rho);
    accumulate(p.b_mu, p.b_rho, g.b_mu, g.b_rho);
}

}  // namespace detail

Tensor bbb_dense_forward(const Tensor& x, const VariationalDenseParams& p,
                         RngStream& rng, bool stochastic, Activation act) {
    VariationalDenseLayer layer(p, act);
    return layer.forward(x, &rng, stochastic);
}

Tensor flipout_dense_forward(const Tensor& x, const VariationalDenseParams& p,
                             RngStream& rng, bool stochastic, Activation act) {
    FlipoutDenseLayer layer(p, act);
    return layer.forward(x, &rng, stochastic);
}

// --- VariationalDenseLayer (Bayes by Backprop) ------------------------------

VariationalDenseLayer::VariationalDenseLayer(std::size_t in, std::size_t out,
                                             Activation act, RngStream& rng)
    : p_(init_variational_params(in, out, rng)), act_(act) {
    zero_like(g_, p_);
}

VariationalDenseLayer::VariationalDenseLayer(VariationalDenseParams p,
                                             Activation act)
    : p_(std::move(p)), act_(act) {
    zero_like(g_, p_);
}

Tensor VariationalDenseLayer::forward(const Tensor& x, RngStream* rng,
                                      bool stochastic) {
    check_shapes(x, p_);
    x_ = x;
    sampled_ = stochastic;
    Tensor b_eff;
    if (stochastic) {
        if (!rng) throw InvalidArgument("bbb: stochastic pass needs an rng");
        // One kernel and bias sample shared by the whole batch.
        eps_w_ = sample_gaussian(p_.w_mu.shape(), 0.0, 1.0, *rng);
        eps_b_ = sample_gaussian(p_.b_mu.shape(), 0.0, 1.0, *rng);
        w_eff_ = add(p_.w_mu, mul(softplus(p_.w_rho), eps_w_));
        b_eff = add(p_.b_mu, mul(softplus(p_.b_rho), eps_b_));
    } else {
        w_eff_ = p_.w_mu;
        b_eff = p_.b_mu;
    }
    z_ = add_rowwise(matmul(x, w_eff_), b_eff);
    return apply_activation(z_, act_);
}

Tensor VariationalDenseLayer::backward(const Tensor& dy) {
    const Tensor dz = activation_backward(z_, dy, act_);
    const Tensor dw = matmul(transpose(x_), dz);
    const Tensor db = sum_rows(dz);
    add_inplace(g_.w_mu, dw);
    add_inplace(g_.b_mu, db);
    if (sampled_) {
        // dsigma/drho = sigmoid(rho); dW/dsigma = eps.
        auto add_rho_grad = [](Tensor& grho, const Tensor& d, const Tensor& eps,
                               const Tensor& rho) {
            auto pg = grho.data();
            auto pd = d.data();
            auto pe = eps.data();
            auto pr = rho.data();
            for (std::size_t i = 0; i < pg.size(); ++i) {
                pg[i] += pd[i] * pe[i] * sigmoid(pr[i]);
            }
        };
        add_rho_grad(g_.w_rho, dw, eps_w_, p_.w_rho);
        add_rho_grad(g_.b_rho, db, eps_b_, p_.b_rho);
    }
    return matmul(dz, transpose(w_eff_));
}

double VariationalDenseLayer::kl(double prior_std) const {
    return kl_gaussian(p_, prior_std);
}

void VariationalDenseLayer::add_kl_grad(double weight, double prior_std) {
    detail::accumulate_kl_grad(p_, weight, prior_std, g_);
}

// --- FlipoutDenseLayer -------------------------------------------------------

FlipoutDenseLayer::FlipoutDenseLayer(std::size_t in, std::size_t out,
                                     Activation act, RngStream& rng)
    : p_(init_variational_params(in, out, rng)), act_(act) {
    zero_like(g_, p_);
}

FlipoutDenseLayer::FlipoutDenseLayer(VariationalDenseParams p, Activation act)
    : p_(std::move(p)), act_(act) {
    zero_like(g_, p_);
}

Tensor FlipoutDenseLayer::forward(const Tensor& x, RngStream* rng,
                                  bool stochastic) {
    check_shapes(x, p_);
    x_ = x;
    sampled_ = stochastic;
    const std::size_t batch = x.dim(0);
    const std::size_t out = p_.w_mu.dim(1);
    z_ = add_rowwise(matmul(x, p_.w_mu), p_.b_mu);
    if (stochastic) {
        if (!rng) throw InvalidArgument("flipout: stochastic pass needs an rng");
        eps_w_ = sample_gaussian(p_.w_mu.shape(), 0.0, 1.0, *rng);
        eps_b_ = sample_gaussian(p_.b_mu.shape(), 0.0, 1.0, *rng);
        delta_w_ = mul(softplus(p_.w_rho), eps_w_);
        delta_b_ = mul(softplus(p_.b_rho), eps_b_);
        sign_in_ = sample_rademacher({batch, x.dim(1)}, *rng);
        sign_out_ = sample_rademacher({batch, out}, *rng);
        sign_bias_ = sample_rademacher({batch, out}, *rng);
        // z += ((x o s) · dW) o r + db o t, per example.
        const Tensor pert = mul(matmul(mul(x, sign_in_), delta_w_), sign_out_);
        add_inplace(z_, pert);
        auto pz = z_.data();
        auto pt = sign_bias_.data();
        auto pb = delta_b_.data();
        for (std::size_t i = 0; i < batch; ++i) {
            for (std::size_t j = 0; j < out; ++j) {
                pz[i * out + j] += pb[j] * pt[i * out + j];
            }
        }
    }
    return apply_activation(z_, act_);
}

Tensor FlipoutDenseLayer::backward(const Tensor& dy) {
    const Tensor dz = activation_backward(z_, dy, act_);
    add_inplace(g_.w_mu, matmul(transpose(x_), dz));
    add_inplace(g_.b_mu, sum_rows(dz));
    Tensor dx = matmul(dz, transpose(p_.w_mu));
    if (sampled_) {
        const Tensor dz_r = mul(dz, sign_out_);
        const Tensor d_delta_w = matmul(transpose(mul(x_, sign_in_)), dz_r);
        const Tensor d_delta_b = sum_rows(mul(dz, sign_bias_));
        auto add_rho_grad = [](Tensor& grho, const Tensor& d, const Tensor& eps,
                               const Tensor& rho) {
            auto pg = grho.data();
            auto pd = d.data();
            auto pe = eps.data();
            auto pr = rho.data();
            for (std::size_t i = 0; i < pg.size(); ++i) {
                pg[i] += pd[i] * pe[i] * sigmoid(pr[i]);
            }
        };
        add_rho_grad(g_.w_rho, d_delta_w, eps_w_, p_.w_rho);
        add_rho_grad(g_.b_rho, d_delta_b, eps_b_, p_.b_rho);
        add_inplace(dx, mul(matmul(dz_r, transpose(delta_w_)), sign_in_));
    }
    return dx;
}

double FlipoutDenseLayer::kl(double prior_std) const {
    return kl_gaussian(p_, prior_std);
}

void FlipoutDenseLayer::add_kl_grad(double weight, double prior_std) {
    detail::accumulate_kl_grad(p_, weight, prior_std, g_);
}

}  // namespace tsuq::nn

#include <doctest.h>

#include <cmath>

#include "tsuq/adam.hpp"
#include "tsuq/losses.hpp"
#include "tsuq/variational.hpp"

using namespace tsuq;
using namespace tsuq::nn;

TEST_CASE("gaussian nll closed forms") {
    // mu = y, sigma^2 = 1: both terms vanish.
    Tensor y = Tensor::vec({0.7, -1.3});
    Tensor lv0 = Tensor::vec({0.0, 0.0});
    CHECK(gaussian_nll_loss(y, lv0, y) == doctest::Approx(0.0).epsilon(1e-9));

    // One element, residual 2, sigma^2 = 4: ln 4 + 1.
    Tensor mu = Tensor::vec({2.0});
    Tensor y1 = Tensor::vec({0.0});
    Tensor lv = Tensor::vec({std::log(4.0)});
    const double expected = std::log(4.0) + 1.0;
    CHECK(gaussian_nll_loss(mu, lv, y1) ==
          doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(2.386294361119891).epsilon(1e-12));

    // Two elements averaging per-element values 0 and ln4+1.
    Tensor mu2 = Tensor::vec({1.0, 2.0});
    Tensor y2 = Tensor::vec({1.0, 0.0});
    Tensor lv2 = Tensor::vec({0.0, std::log(4.0)});
    CHECK(gaussian_nll_loss(mu2, lv2, y2) ==
          doctest::Approx(expected / 2.0).epsilon(1e-9));
    CHECK(expected / 2.0 == doctest::Approx(1.1931471805599453).epsilon(1e-12));

    CHECK_THROWS_AS(gaussian_nll_loss(mu, lv2, y1), InvalidArgument);
}

TEST_CASE("mse closed forms") {
    Tensor y = Tensor::vec({1.0, -1.0});
    CHECK(mse_loss(y, y) == 0.0);
    Tensor zero = Tensor::vec({0.0, 0.0});
    CHECK(mse_loss(zero, y) == doctest::Approx(1.0));
    CHECK_THROWS_AS(mse_loss(zero, Tensor::vec({1.0})), InvalidArgument);
}

TEST_CASE("kl divergence closed forms") {
    // q equal to the prior everywhere: zero divergence.
    VariationalDenseParams p;
    p.w_mu = Tensor({2, 2});
    p.w_rho = Tensor::full({2, 2}, softplus_inv(1.0));
    p.b_mu = Tensor({2});
    p.b_rho = Tensor::full({2}, softplus_inv(1.0));
    CHECK(kl_gaussian(p, 1.0) == doctest::Approx(0.0).epsilon(1e-12));

    // One weight, mu=1, sigma=1, prior 1: ln(1) + (1+1)/2 - 1/2 = 0.5.
    VariationalDenseParams one;
    one.w_mu = Tensor::mat({{1.0}});
    one.w_rho = Tensor::mat({{softplus_inv(1.0)}});
    one.b_mu = Tensor({0});
    one.b_rho = Tensor({0});
    CHECK(kl_gaussian(one, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

    // Nonnegativity at random parameterizations.
    RngStream rng(31);
    for (int i = 0; i < 1000; ++i) {
        VariationalDenseParams q;
        q.w_mu = sample_gaussian({2, 3}, 0.0, 2.0, rng);
        q.w_rho = sample_gaussian({2, 3}, 0.0, 2.0, rng);
        q.b_mu = sample_gaussian({3}, 0.0, 2.0, rng);
        q.b_rho = sample_gaussian({3}, 0.0, 2.0, rng);
        CHECK(kl_gaussian(q, 1.0) >= 0.0);
    }
}

TEST_CASE("adam single steps") {
    // Zero gradient: parameters unchanged.
    Tensor p = Tensor::vec({1.0, -2.0});
    AdamState st(p.shape());
    Tensor g0({2});
    adam_step(p, g0, st, 0.001, 1);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == -2.0);

    // Constant gradient 1 at t=1: bias-corrected update is -lr/(1+eps_hat).
    Tensor q = Tensor::vec({0.0});
    AdamState st2(q.shape());
    adam_step(q, Tensor::vec({1.0}), st2, 0.001, 1);
    CHECK(q[0] == doctest::Approx(-0.001).epsilon(1e-6));

    CHECK_THROWS_AS(adam_step(q, g0, st2, 0.001, 2), InvalidArgument);
    Tensor r = Tensor::vec({0.0});
    AdamState st3(r.shape());
    CHECK_THROWS_AS(adam_step(r, Tensor::vec({1.0}), st3, 0.001, 0),
                    InvalidArgument);
}

TEST_CASE("adam minimizes a quadratic") {
    Tensor x = Tensor::vec({5.0});
    AdamState st(x.shape());
    for (int t = 1; t <= 500; ++t) {
        Tensor g = Tensor::vec({2.0 * x[0]});
        adam_step(x, g, st, 0.1, t);
    }
    CHECK(std::abs(x[0]) < 0.01);
}

TEST_CASE("adam optimizer drives paired tensors") {
    Tensor a = Tensor::vec({5.0});
    Tensor b = Tensor::vec({-3.0});
    Tensor ga({1}), gb({1});
    AdamOptimizer opt({&a, &b}, {&ga, &gb}, 0.1);
    for (int t = 0; t < 500; ++t) {
        ga[0] = 2.0 * a[0];
        gb[0] = 2.0 * b[0];
        opt.step();
    }
    CHECK(std::abs(a[0]) < 0.01);
    CHECK(std::abs(b[0]) < 0.01);
}

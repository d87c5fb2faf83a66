#include <doctest.h>

#include <memory>

#include "../common/gradcheck_harness.hpp"

using namespace tsuq;
using namespace tsuq::nn;
using gradharness::check_layer;

// Unit runs use 10 random points per layer; the acceptance suite repeats
// the same checks at 50.
static constexpr int kPoints = 10;
static constexpr double kTol = 1e-4;

TEST_CASE("dense layer gradients") {
    auto make = [](RngStream& init) {
        return std::make_unique<DenseLayer>(3, 2, Activation::Relu, init);
    };
    CHECK(check_layer(make, 4, 3, kPoints, 101) < kTol);
}

TEST_CASE("dropout layer gradients with frozen mask") {
    auto make = [](RngStream& init) {
        return std::make_unique<DropoutDenseLayer>(3, 2, Activation::Identity,
                                                   0.2, init);
    };
    CHECK(check_layer(make, 4, 3, kPoints, 102) < kTol);
}

TEST_CASE("dropconnect layer gradients with frozen mask") {
    auto make = [](RngStream& init) {
        return std::make_unique<DropConnectDenseLayer>(3, 2, Activation::Identity,
                                                       0.3, init);
    };
    CHECK(check_layer(make, 4, 3, kPoints, 103) < kTol);
}

TEST_CASE("bbb layer gradients with frozen noise") {
    auto make = [](RngStream& init) {
        return std::make_unique<VariationalDenseLayer>(3, 2, Activation::Identity,
                                                       init);
    };
    CHECK(check_layer(make, 4, 3, kPoints, 104) < kTol);
}

TEST_CASE("flipout layer gradients with frozen noise and signs") {
    auto make = [](RngStream& init) {
        return std::make_unique<FlipoutDenseLayer>(3, 2, Activation::Identity,
                                                   init);
    };
    CHECK(check_layer(make, 4, 3, kPoints, 105) < kTol);
}

TEST_CASE("gaussian head gradients") {
    auto make = [](RngStream& init) {
        return std::make_unique<GaussianHeadLayer>(3, 2, init);
    };
    CHECK(check_layer(make, 4, 3, kPoints, 106) < kTol);
}

TEST_CASE("lstm gradients through 12 timesteps") {
    auto make = [](RngStream& init) {
        return std::make_unique<LstmLayer>(2, 3, false, init);
    };
    CHECK(check_layer(make, 3, 2, kPoints, 107, true, 12) < kTol);

    auto make_seq = [](RngStream& init) {
        return std::make_unique<LstmLayer>(2, 3, true, init);
    };
    CHECK(check_layer(make_seq, 3, 2, kPoints, 108, true, 12) < kTol);
}

TEST_CASE("parameter-free dropout mask gradients") {
    auto make = [](RngStream&) { return std::make_unique<DropoutLayer>(0.25); };
    CHECK(check_layer(make, 4, 3, kPoints, 109) < kTol);
}

TEST_CASE("mse gradient") {
    CHECK(gradharness::check_mse_grad(kPoints, 110) < kTol);
}

TEST_CASE("gaussian nll gradients") {
    CHECK(gradharness::check_nll_grad(kPoints, 111) < kTol);
}

TEST_CASE("kl divergence gradients") {
    CHECK(gradharness::check_kl_grad(kPoints, 112) < kTol);
}

TEST_CASE("composite model gradients") {
    ModelConfig mlp;
    mlp.architecture = Architecture::Mlp;
    mlp.uq_method = UqMethod::Baseline;
    mlp.hidden_units = 4;
    mlp.window = 6;
    mlp.features = 2;
    mlp.horizon = 2;
    CHECK(gradharness::check_model_composite(mlp, true, 113) < kTol);

    ModelConfig lstm = mlp;
    lstm.architecture = Architecture::Lstm;
    lstm.uq_method = UqMethod::Dropout;
    lstm.window = 12;
    lstm.horizon = 1;
    CHECK(gradharness::check_model_composite(lstm, false, 114) < kTol);

    ModelConfig flip = mlp;
    flip.uq_method = UqMethod::Flipout;
    flip.horizon = 1;
    CHECK(gradharness::check_model_composite(flip, false, 115) < kTol);
}

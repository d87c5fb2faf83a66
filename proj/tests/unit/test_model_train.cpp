#include <doctest.h>

#include <cmath>

#include "../common/gradcheck_harness.hpp"
#include "test_util.hpp"
#include "tsuq/checkpoint.hpp"
#include "tsuq/io_util.hpp"
#include "tsuq/predictive.hpp"
#include "tsuq/synth.hpp"
#include "tsuq/train.hpp"
#include "tsuq/windows.hpp"

using namespace tsuq;
using namespace tsuq::nn;

namespace {

ModelConfig baseline_mlp(std::size_t features = 1) {
    ModelConfig mc;
    mc.architecture = Architecture::Mlp;
    mc.uq_method = UqMethod::Baseline;
    mc.features = features;
    return mc;
}

dataio::WindowSet linear_windows(std::size_t n) {
    const auto raw = dataio::synth_series(dataio::SynthKind::Linear, n, 0.0, 1);
    auto [std_frame, stats] = dataio::standardize(raw);
    return dataio::make_windows(std_frame, 12, 1, &stats);
}

}  // namespace

TEST_CASE("config labels and string round trips") {
    CHECK(to_string(Architecture::Mlp) == "mlp");
    CHECK(architecture_from_string("lstm") == Architecture::Lstm);
    CHECK(uq_method_from_string("dropconnect") == UqMethod::DropConnect);
    CHECK(to_string(UqMethod::Bbb) == "bbb");
    CHECK_THROWS_AS(architecture_from_string("gru"), ConfigError);
    CHECK_THROWS_AS(uq_method_from_string("laplace"), ConfigError);

    ModelConfig mc = baseline_mlp();
    CHECK(mc.label() == "mlp_baseline");
    mc.architecture = Architecture::Lstm;
    mc.uq_method = UqMethod::DropConnect;
    CHECK(mc.label() == "lstm_dropconnect");

    CHECK(default_drop_prob(UqMethod::Dropout) == 0.2);
    CHECK(default_drop_prob(UqMethod::DropConnect) == 0.05);
    CHECK(default_drop_prob(UqMethod::Baseline) == 0.0);
    ModelConfig d;
    d.uq_method = UqMethod::Dropout;
    CHECK(d.effective_drop_prob() == 0.2);
    d.drop_prob = 0.4;
    CHECK(d.effective_drop_prob() == 0.4);
}

TEST_CASE("validate_config rejects out-of-range fields") {
    ModelConfig ok = baseline_mlp();
    CHECK_NOTHROW(validate_config(ok));

    ModelConfig bad = ok;
    bad.horizon = 0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad.horizon = 13;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = ok;
    bad.drop_prob = 1.0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = ok;
    bad.hidden_layers = 0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
}

TEST_CASE("build_model mlp parameter count") {
    // 12 window x 8 features in, two hidden layers of 32, gaussian head
    // with one (mu, log_var) pair:
    // 96*32 + 32 + 32*32 + 32 + 32*2 + 2.
    ModelConfig mc = baseline_mlp(8);
    RngStream rng(1);
    Model m = build_model(mc, rng);
    CHECK(m.param_count() == std::size_t(96 * 32 + 32 + 32 * 32 + 32 + 32 * 2 + 2));
    CHECK(m.param_count() == 4226);
    CHECK(m.layer_count() == 3);
    CHECK(m.layer(0).kind() == "dense");
    CHECK(m.layer(2).kind() == "gaussian_head");
}

TEST_CASE("build_model picks the method's layer kinds") {
    RngStream rng(2);
    ModelConfig mc = baseline_mlp();
    mc.uq_method = UqMethod::Dropout;
    Model drop = build_model(mc, rng);
    CHECK(drop.layer(0).kind() == "dropout_dense");
    CHECK(drop.layer(2).kind() == "dropout_dense");  // head carries the method

    mc.uq_method = UqMethod::Ensemble;
    Model ens = build_model(mc, rng);
    CHECK(ens.layer(0).kind() == "dense");
    CHECK(ens.layer(2).kind() == "dense");

    mc.uq_method = UqMethod::Bbb;
    Model bbb = build_model(mc, rng);
    CHECK(bbb.layer(0).kind() == "variational_dense");

    mc.uq_method = UqMethod::Flipout;
    Model flip = build_model(mc, rng);
    CHECK(flip.layer(2).kind() == "flipout_dense");
}

TEST_CASE("build_model lstm structure") {
    RngStream rng(3);
    ModelConfig mc = baseline_mlp();
    mc.architecture = Architecture::Lstm;
    Model m = build_model(mc, rng);
    CHECK(m.layer_count() == 3);  // 2 lstm stages + 1 output layer
    CHECK(m.layer(0).kind() == "lstm");
    CHECK(m.layer(1).kind() == "lstm");
    CHECK(m.layer(2).kind() == "gaussian_head");

    mc.uq_method = UqMethod::Dropout;
    Model md = build_model(mc, rng);
    CHECK(md.layer_count() == 4);  // extra mask on the last hidden state
    CHECK(md.layer(2).kind() == "dropout");
    CHECK(md.layer(3).kind() == "dropout_dense");
}

TEST_CASE("stochastic models are deterministic with sampling off") {
    RngStream rng(4);
    ModelConfig mc = baseline_mlp();
    mc.uq_method = UqMethod::Dropout;
    Model m = build_model(mc, rng);

    RngStream data(5);
    Tensor x = gradharness::random_tensor({3, 12, 1}, data);
    Tensor a = m.forward(x, nullptr, false);
    Tensor b = m.forward(x, nullptr, false);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("train rejects bad configs") {
    auto ws = linear_windows(40);
    RngStream rng(6);
    ModelConfig mc = baseline_mlp();
    Model m = build_model(mc, rng);

    TrainConfig tc;
    tc.epochs = 0;
    tc.loss = LossKind::GaussianNll;
    CHECK_THROWS_AS(train(m, ws, tc, rng), InvalidArgument);

    // Baseline trains with the NLL loss only, and vice versa.
    tc.epochs = 1;
    tc.loss = LossKind::Mse;
    CHECK_THROWS_AS(train(m, ws, tc, rng), WrongMethod);

    ModelConfig ec = baseline_mlp();
    ec.uq_method = UqMethod::Ensemble;
    Model ens = build_model(ec, rng);
    TrainConfig tnll;
    tnll.loss = LossKind::GaussianNll;
    CHECK_THROWS_AS(train(ens, ws, tnll, rng), WrongMethod);

    CHECK(default_loss(UqMethod::Baseline) == LossKind::GaussianNll);
    CHECK(default_loss(UqMethod::Flipout) == LossKind::Mse);
}

TEST_CASE("training history is bit-identical under a fixed seed") {
    auto ws = linear_windows(60);
    TrainConfig tc;
    tc.epochs = 5;
    tc.loss = LossKind::GaussianNll;

    auto run = [&]() {
        RngStream init(7);
        ModelConfig mc = baseline_mlp();
        Model m = build_model(mc, init);
        RngStream trng(8);
        return train(m, ws, tc, trng);
    };
    const auto h1 = run();
    const auto h2 = run();
    REQUIRE(h1.size() == 5);
    for (std::size_t i = 0; i < h1.size(); ++i) CHECK(h1[i] == h2[i]);
}

TEST_CASE("training overfits a small noise-free linear task") {
    auto ws = linear_windows(76);  // 64 usable windows
    REQUIRE(ws.count() == 64);

    RngStream init(9);
    ModelConfig mc = baseline_mlp();
    Model m = build_model(mc, init);
    TrainConfig tc;
    tc.epochs = 500;
    tc.loss = LossKind::GaussianNll;
    RngStream trng(10);
    const auto history = train(m, ws, tc, trng);
    REQUIRE(history.size() == 500);

    auto pred = uq::baseline_predict(m, ws.x);
    CHECK(mse_loss(pred.mean, ws.y) < 1e-2);

    // Loss falls in at least 8 of the first 10 epochs.
    int drops = 0;
    for (int i = 1; i <= 10; ++i) drops += history[i] < history[i - 1] ? 1 : 0;
    CHECK(drops >= 8);
}

TEST_CASE("training reports divergence with the epoch") {
    auto ws = linear_windows(76);
    RngStream init(11);
    ModelConfig mc = baseline_mlp();
    mc.uq_method = UqMethod::Ensemble;
    Model m = build_model(mc, init);
    TrainConfig tc;
    tc.epochs = 5;
    tc.learning_rate = 1e200;  // guaranteed overflow
    RngStream trng(12);
    try {
        train(m, ws, tc, trng);
        FAIL("expected TrainingDiverged");
    } catch (const TrainingDiverged& e) {
        CHECK(e.epoch >= 1);
        CHECK(std::string(e.what()).find("epoch") != std::string::npos);
    }
}

TEST_CASE("checkpoint round trip is bit exact") {
    TempDir tmp("ckpt");
    auto ws = linear_windows(50);

    RngStream init(13);
    ModelConfig mc = baseline_mlp();
    Model m = build_model(mc, init);
    TrainConfig tc;
    tc.epochs = 3;
    tc.loss = LossKind::GaussianNll;
    RngStream trng(14);
    train(m, ws, tc, trng);

    const std::string path = tmp.str() + "/model.json";
    save_checkpoint(m, 14, path);
    Checkpoint ck = load_checkpoint(path);
    CHECK(ck.seed == 14);
    CHECK(ck.model.config().label() == "mlp_baseline");

    const auto p1 = m.params();
    const auto p2 = ck.model.params();
    REQUIRE(p1.size() == p2.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        REQUIRE(p1[i]->size() == p2[i]->size());
        for (std::size_t j = 0; j < p1[i]->size(); ++j) {
            CHECK((*p1[i])[j] == (*p2[i])[j]);
        }
    }

    auto a = uq::baseline_predict(m, ws.x);
    auto b = uq::baseline_predict(ck.model, ws.x);
    for (std::size_t i = 0; i < a.mean.size(); ++i) {
        CHECK(a.mean[i] == b.mean[i]);
        CHECK(a.std[i] == b.std[i]);
    }

    CHECK_THROWS_AS(load_checkpoint(tmp.str() + "/missing.json"), IoError);
}

TEST_CASE("checkpoint rejects tampered files") {
    TempDir tmp("ckpt-bad");
    const std::string path = tmp.str() + "/bad.json";
    atomic_write_file(path, "{\"format\": \"something-else\", \"version\": 1}");
    CHECK_THROWS_AS(load_checkpoint(path), FormatError);
    atomic_write_file(path, "not json at all");
    CHECK_THROWS_AS(load_checkpoint(path), FormatError);
}

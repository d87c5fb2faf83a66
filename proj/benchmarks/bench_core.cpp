// Microbenchmarks for the numeric kernels the training loop lives in:
// matmul, dense/LSTM forward+backward, the stochastic layer variants, and
// the end-of-epoch prediction + metrics paths.
//
// Run the whole suite:   ./tsuq_bench
// Or a slice:            ./tsuq_bench --benchmark_filter=Lstm

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "tsuq/dense.hpp"
#include "tsuq/losses.hpp"
#include "tsuq/lstm.hpp"
#include "tsuq/metrics.hpp"
#include "tsuq/model.hpp"
#include "tsuq/predictive.hpp"
#include "tsuq/rng.hpp"
#include "tsuq/synth.hpp"
#include "tsuq/tensor.hpp"
#include "tsuq/variational.hpp"
#include "tsuq/windows.hpp"

namespace {

using namespace tsuq;

Tensor random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    RngStream rng(seed);
    return sample_gaussian({rows, cols}, 0.0, 1.0, rng);
}

// batch x window x features input block, standard normal.
Tensor random_sequence(std::size_t batch, std::size_t steps, std::size_t feats,
                       std::uint64_t seed) {
    RngStream rng(seed);
    return sample_gaussian({batch, steps, feats}, 0.0, 1.0, rng);
}

void BM_Matmul(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Tensor a = random_matrix(32, n, 1);
    const Tensor b = random_matrix(n, 32, 2);
    for (auto _ : state) {
        Tensor c = matmul(a, b);
        benchmark::DoNotOptimize(c.data().data());
    }
    state.SetItemsProcessed(state.iterations() * 32 * n * 32);
}
BENCHMARK(BM_Matmul)->Arg(32)->Arg(96)->Arg(256);

void BM_DenseForwardBackward(benchmark::State& state) {
    RngStream rng(7);
    nn::DenseLayer layer(96, 32, nn::Activation::Relu, rng);
    const Tensor x = random_matrix(32, 96, 3);
    const Tensor dy = random_matrix(32, 32, 4);
    for (auto _ : state) {
        Tensor y = layer.forward(x, nullptr, false);
        benchmark::DoNotOptimize(y.data().data());
        Tensor dx = layer.backward(dy);
        benchmark::DoNotOptimize(dx.data().data());
        layer.zero_grad();
    }
}
BENCHMARK(BM_DenseForwardBackward);

void BM_DropoutForward(benchmark::State& state) {
    RngStream rng(8);
    nn::DropoutDenseLayer layer(96, 32, nn::Activation::Relu, 0.2, rng);
    const Tensor x = random_matrix(32, 96, 3);
    RngStream noise(9);
    for (auto _ : state) {
        Tensor y = layer.forward(x, &noise, true);
        benchmark::DoNotOptimize(y.data().data());
    }
}
BENCHMARK(BM_DropoutForward);

void BM_VariationalForwardBackward(benchmark::State& state) {
    RngStream rng(10);
    nn::VariationalDenseLayer layer(96, 32, nn::Activation::Relu, rng);
    const Tensor x = random_matrix(32, 96, 3);
    const Tensor dy = random_matrix(32, 32, 4);
    RngStream noise(11);
    for (auto _ : state) {
        Tensor y = layer.forward(x, &noise, true);
        benchmark::DoNotOptimize(y.data().data());
        Tensor dx = layer.backward(dy);
        benchmark::DoNotOptimize(dx.data().data());
        layer.zero_grad();
    }
}
BENCHMARK(BM_VariationalForwardBackward);

void BM_FlipoutForwardBackward(benchmark::State& state) {
    RngStream rng(12);
    nn::FlipoutDenseLayer layer(96, 32, nn::Activation::Relu, rng);
    const Tensor x = random_matrix(32, 96, 3);
    const Tensor dy = random_matrix(32, 32, 4);
    RngStream noise(13);
    for (auto _ : state) {
        Tensor y = layer.forward(x, &noise, true);
        benchmark::DoNotOptimize(y.data().data());
        Tensor dx = layer.backward(dy);
        benchmark::DoNotOptimize(dx.data().data());
        layer.zero_grad();
    }
}
BENCHMARK(BM_FlipoutForwardBackward);

// Full BPTT cost of one 32-unit LSTM layer over a window of `range(0)`
// timesteps, the dominant term in recurrent training.
void BM_LstmForwardBackward(benchmark::State& state) {
    const auto steps = static_cast<std::size_t>(state.range(0));
    RngStream rng(14);
    nn::LstmLayer layer(8, 32, false, rng);
    const Tensor x = random_sequence(32, steps, 8, 15);
    const Tensor dy = random_matrix(32, 32, 16);
    for (auto _ : state) {
        Tensor y = layer.forward(x, nullptr, false);
        benchmark::DoNotOptimize(y.data().data());
        Tensor dx = layer.backward(dy);
        benchmark::DoNotOptimize(dx.data().data());
        layer.zero_grad();
    }
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_LstmForwardBackward)->Arg(12)->Arg(24)->Arg(48);

void BM_GaussianNllGrads(benchmark::State& state) {
    const Tensor mu = random_matrix(32, 12, 17);
    const Tensor log_var = random_matrix(32, 12, 18);
    const Tensor y = random_matrix(32, 12, 19);
    for (auto _ : state) {
        auto [dmu, dlv] = nn::gaussian_nll_grads(mu, log_var, y);
        benchmark::DoNotOptimize(dmu.data().data());
        benchmark::DoNotOptimize(dlv.data().data());
    }
}
BENCHMARK(BM_GaussianNllGrads);

// Prediction-time cost of averaging `range(0)` stochastic passes over a
// 256-window test set.
void BM_McPredict(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    nn::ModelConfig cfg;
    cfg.uq_method = nn::UqMethod::Dropout;
    cfg.window = 12;
    cfg.features = 8;
    cfg.horizon = 12;
    RngStream init(20);
    nn::Model model = nn::build_model(cfg, init);
    const Tensor x = random_matrix(256, 96, 21);
    RngStream rng(22);
    for (auto _ : state) {
        auto pred = uq::mc_predict(model, x, m, rng);
        benchmark::DoNotOptimize(pred.mean.data().data());
    }
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_McPredict)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_MetricsBundle(benchmark::State& state) {
    const std::size_t n = 10'000;
    RngStream rng(23);
    Tensor y = sample_gaussian({n}, 0.0, 1.0, rng);
    Tensor mu = sample_gaussian({n}, 0.0, 1.0, rng);
    Tensor sigma = Tensor::full({n}, 0.8);
    metrics::TargetScale scale{100.0, 25.0};
    for (auto _ : state) {
        auto b = metrics::bundle(y, mu, sigma, scale);
        benchmark::DoNotOptimize(b);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_MetricsBundle);

void BM_ErrorVsConfidence(benchmark::State& state) {
    const std::size_t n = 10'000;
    RngStream rng(24);
    Tensor y = sample_gaussian({n}, 0.0, 1.0, rng);
    Tensor mu = sample_gaussian({n}, 0.0, 1.0, rng);
    Tensor sigma = sample_gaussian({n}, 1.0, 0.1, rng);
    for (auto& s : sigma.data()) s = s < 0.01 ? 0.01 : s;
    for (auto _ : state) {
        auto curve = metrics::error_vs_confidence(y, mu, sigma);
        benchmark::DoNotOptimize(curve.mae.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ErrorVsConfidence);

void BM_MakeWindows(benchmark::State& state) {
    auto frame = dataio::synth_series(dataio::SynthKind::Sine, 5000, 0.1, 25);
    for (auto _ : state) {
        auto ws = dataio::make_windows(frame, 24, 12);
        benchmark::DoNotOptimize(ws.x.data().data());
    }
}
BENCHMARK(BM_MakeWindows);

void BM_RngGaussian(benchmark::State& state) {
    RngStream rng(26);
    for (auto _ : state) {
        double v = rng.gaussian();
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_RngGaussian);

}  // namespace

BENCHMARK_MAIN();

#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "../common/gradcheck_harness.hpp"
#include "tsuq/predictive.hpp"
#include "tsuq/variational.hpp"

using namespace tsuq;
using namespace tsuq::nn;
using namespace tsuq::uq;

namespace {

Model make_model(UqMethod method, std::uint64_t seed, double drop_prob = -1.0) {
    ModelConfig mc;
    mc.architecture = Architecture::Mlp;
    mc.uq_method = method;
    mc.features = 1;
    if (drop_prob >= 0.0) mc.drop_prob = drop_prob;
    RngStream rng(seed);
    return build_model(mc, rng);
}

// One variational unit mapping a scalar input straight to the output, so
// the MC predictive std has the closed form |x| * sigma_w.
Model scalar_bbb_model(double w_mu, double sigma_w) {
    ModelConfig mc;
    mc.architecture = Architecture::Mlp;
    mc.uq_method = UqMethod::Bbb;
    mc.features = 1;
    mc.window = 1;
    mc.hidden_units = 1;
    mc.hidden_layers = 1;

    VariationalDenseParams p;
    p.w_mu = Tensor::mat({{w_mu}});
    p.w_rho = Tensor::mat({{softplus_inv(sigma_w)}});
    p.b_mu = Tensor::vec({0.0});
    p.b_rho = Tensor::vec({softplus_inv(1e-12)});
    std::vector<std::unique_ptr<Layer>> layers;
    layers.push_back(
        std::make_unique<VariationalDenseLayer>(std::move(p), Activation::Identity));
    return Model(mc, std::move(layers));
}

// Two-member stand-in ensemble whose outputs are the constants a and b.
std::vector<Model> constant_pair(double a, double b) {
    ModelConfig mc;
    mc.architecture = Architecture::Mlp;
    mc.uq_method = UqMethod::Ensemble;
    mc.features = 1;
    mc.window = 1;
    mc.hidden_units = 1;
    mc.hidden_layers = 1;
    std::vector<Model> members;
    for (double bias : {a, b}) {
        DenseParams p{Tensor::mat({{0.0}}), Tensor::vec({bias})};
        std::vector<std::unique_ptr<Layer>> layers;
        layers.push_back(std::make_unique<DenseLayer>(std::move(p), Activation::Identity));
        members.emplace_back(mc, std::move(layers));
    }
    return members;
}

}  // namespace

TEST_CASE("mc_predict validates its inputs") {
    Model base = make_model(UqMethod::Baseline, 1);
    Model ens = make_model(UqMethod::Ensemble, 2);
    Model drop = make_model(UqMethod::Dropout, 3);
    RngStream data(4);
    Tensor x = gradharness::random_tensor({3, 12, 1}, data);
    RngStream rng(5);

    CHECK_THROWS_AS(mc_predict(drop, x, 1, rng), InvalidArgument);
    CHECK_THROWS_AS(mc_predict(base, x, 10, rng), WrongMethod);
    CHECK_THROWS_AS(mc_predict(ens, x, 10, rng), WrongMethod);
}

TEST_CASE("mc_predict with dropout probability zero collapses") {
    Model drop = make_model(UqMethod::Dropout, 6, 0.0);
    RngStream data(7);
    Tensor x = gradharness::random_tensor({4, 12, 1}, data);
    RngStream rng(8);
    auto pred = mc_predict(drop, x, 16, rng);
    Tensor det = drop.forward(x, nullptr, false);
    REQUIRE(pred.mean.size() == det.size());
    for (std::size_t i = 0; i < det.size(); ++i) {
        CHECK(pred.mean[i] == doctest::Approx(det[i]).epsilon(1e-12));
        CHECK(pred.std[i] == 0.0);
    }
    CHECK(pred.sample_count == 16);
    CHECK(pred.method == "dropout");
}

TEST_CASE("mc_predict ignores prior consumption of the caller stream") {
    Model drop = make_model(UqMethod::Dropout, 9);
    RngStream data(10);
    Tensor x = gradharness::random_tensor({3, 12, 1}, data);

    RngStream fresh(11);
    auto p1 = mc_predict(drop, x, 8, fresh);

    RngStream used(11);
    for (int i = 0; i < 64; ++i) used.gaussian();  // burn some draws first
    auto p2 = mc_predict(drop, x, 8, used);

    for (std::size_t i = 0; i < p1.mean.size(); ++i) {
        CHECK(p1.mean[i] == p2.mean[i]);
        CHECK(p1.std[i] == p2.std[i]);
    }
}

TEST_CASE("mc_predict matches a hand-stacked moment oracle") {
    Model drop = make_model(UqMethod::Dropout, 12);
    RngStream data(13);
    Tensor x = gradharness::random_tensor({5, 12, 1}, data);
    const std::size_t m = 32;

    RngStream rng(14);
    auto pred = mc_predict(drop, x, m, rng);

    RngStream twin(14);
    std::vector<Tensor> samples;
    for (std::size_t k = 0; k < m; ++k) {
        RngStream pass = twin.split(k);
        samples.push_back(drop.forward(x, &pass, true));
    }
    const std::size_t n = samples[0].size();
    for (std::size_t i = 0; i < n; ++i) {
        double mu = 0.0;
        for (const Tensor& s : samples) mu += s[i];
        mu /= double(m);
        double ss = 0.0;
        for (const Tensor& s : samples) ss += (s[i] - mu) * (s[i] - mu);
        const double sd = std::sqrt(ss / double(m - 1));
        CHECK(pred.mean[i] == doctest::Approx(mu).epsilon(1e-12));
        CHECK(pred.std[i] == doctest::Approx(sd).epsilon(1e-12));
    }
}

TEST_CASE("mc_predict recovers the analytic spread of a variational unit") {
    Model toy = scalar_bbb_model(1.0, 0.5);
    Tensor x = Tensor::mat({{1.0}});
    RngStream rng(15);
    const std::size_t m = 10000;
    auto pred = mc_predict(toy, x, m, rng);
    // Sample-std standard error for a normal: sigma / sqrt(2 (m - 1)).
    const double se = 0.5 / std::sqrt(2.0 * double(m - 1));
    CHECK(pred.mean.at(0, 0) == doctest::Approx(1.0).epsilon(3.0 * se));
    CHECK(std::abs(pred.std.at(0, 0) - 0.5) < 3.0 * se);
}

TEST_CASE("mc_predict variance estimate is stable in the sample count") {
    Model drop = make_model(UqMethod::Dropout, 16);
    RngStream data(17);
    Tensor x = gradharness::random_tensor({6, 12, 1}, data);

    RngStream r1(18), r2(19);
    auto small = mc_predict(drop, x, 10000, r1);
    auto large = mc_predict(drop, x, 40000, r2);
    std::vector<double> rel;
    for (std::size_t i = 0; i < small.std.size(); ++i) {
        const double denom = std::max(std::abs(large.std[i]), 1e-12);
        rel.push_back(std::abs(small.std[i] - large.std[i]) / denom);
    }
    std::sort(rel.begin(), rel.end());
    CHECK(rel[rel.size() / 2] < 0.03);
}

TEST_CASE("ensemble_predict validates the member list") {
    Tensor x = Tensor::mat({{1.0}});
    auto pair = constant_pair(-1.0, 1.0);

    std::vector<Model> one;
    one.push_back(std::move(pair[0]));
    CHECK_THROWS_AS(ensemble_predict(one, x), InvalidArgument);

    std::vector<Model> bases;
    bases.push_back(make_model(UqMethod::Baseline, 20));
    bases.push_back(make_model(UqMethod::Baseline, 21));
    RngStream data(22);
    Tensor xb = gradharness::random_tensor({2, 12, 1}, data);
    CHECK_THROWS_AS(ensemble_predict(bases, xb), WrongMethod);

    std::vector<Model> mixed;
    mixed.push_back(make_model(UqMethod::Ensemble, 23));
    ModelConfig other;
    other.architecture = Architecture::Mlp;
    other.uq_method = UqMethod::Ensemble;
    other.features = 1;
    other.horizon = 2;
    RngStream r(24);
    mixed.push_back(build_model(other, r));
    CHECK_THROWS_AS(ensemble_predict(mixed, xb), InvalidArgument);
}

TEST_CASE("ensemble_predict member moments") {
    Tensor x = Tensor::mat({{7.0}});
    auto pm = constant_pair(-1.0, 1.0);
    auto pred = ensemble_predict(pm, x);
    CHECK(pred.mean.at(0, 0) == 0.0);
    CHECK(pred.std.at(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pred.method == "ensemble");
    CHECK(pred.sample_count == 2);

    auto same = constant_pair(0.75, 0.75);
    auto flat = ensemble_predict(same, x);
    CHECK(flat.mean.at(0, 0) == 0.75);
    CHECK(flat.std.at(0, 0) == 0.0);
}

TEST_CASE("baseline_predict converts log variance to std") {
    ModelConfig mc;
    mc.architecture = Architecture::Mlp;
    mc.uq_method = UqMethod::Baseline;
    mc.features = 1;
    mc.window = 1;
    mc.horizon = 1;
    mc.hidden_units = 1;
    mc.hidden_layers = 1;

    auto with_log_var = [&](double lv) {
        // Head rows map the scalar input to (mu = 2 x, log_var = const).
        DenseParams p{Tensor::mat({{2.0, 0.0}}), Tensor::vec({0.0, lv})};
        std::vector<std::unique_ptr<Layer>> layers;
        layers.push_back(std::make_unique<GaussianHeadLayer>(std::move(p), 1));
        return Model(mc, std::move(layers));
    };

    Tensor x = Tensor::mat({{3.0}});
    Model unit = with_log_var(0.0);
    auto p0 = baseline_predict(unit, x);
    CHECK(p0.mean.at(0, 0) == 6.0);
    CHECK(p0.std.at(0, 0) == 1.0);
    CHECK(p0.method == "baseline");
    CHECK(p0.sample_count == 1);

    Model wide = with_log_var(std::log(4.0));
    auto p1 = baseline_predict(wide, x);
    CHECK(p1.std.at(0, 0) == doctest::Approx(2.0).epsilon(1e-12));

    auto p2 = baseline_predict(wide, x);
    CHECK(p1.mean.at(0, 0) == p2.mean.at(0, 0));
    CHECK(p1.std.at(0, 0) == p2.std.at(0, 0));

    Model drop = make_model(UqMethod::Dropout, 25);
    RngStream data(26);
    Tensor xd = gradharness::random_tensor({2, 12, 1}, data);
    CHECK_THROWS_AS(baseline_predict(drop, xd), WrongMethod);
}

TEST_CASE("combine_mixture closed forms") {
    // Identical components: the mixture is the component.
    Tensor mu({2, 1, 1});
    mu[0] = 3.0;
    mu[1] = 3.0;
    Tensor var({2, 1, 1});
    var[0] = 4.0;
    var[1] = 4.0;
    auto [m1, s1] = combine_mixture(mu, var);
    CHECK(m1.at(0, 0) == 3.0);
    CHECK(s1.at(0, 0) == 2.0);

    // Two point masses at -1 and +1: var = E[mu^2] - 0 = 1.
    mu[0] = -1.0;
    mu[1] = 1.0;
    var[0] = 0.0;
    var[1] = 0.0;
    auto [m2, s2] = combine_mixture(mu, var);
    CHECK(m2.at(0, 0) == 0.0);
    CHECK(s2.at(0, 0) == 1.0);

    // Single component: identity.
    Tensor mu1({1, 2, 1});
    mu1[0] = 0.5;
    mu1[1] = -2.0;
    Tensor var1({1, 2, 1});
    var1[0] = 9.0;
    var1[1] = 0.25;
    auto [m3, s3] = combine_mixture(mu1, var1);
    CHECK(m3.at(0, 0) == 0.5);
    CHECK(m3.at(1, 0) == -2.0);
    CHECK(s3.at(0, 0) == 3.0);
    CHECK(s3.at(1, 0) == 0.5);

    var1[1] = -0.25;
    CHECK_THROWS_AS(combine_mixture(mu1, var1), InvalidArgument);
    CHECK_THROWS_AS(combine_mixture(Tensor::mat({{1.0}}), Tensor::mat({{1.0}})),
                    InvalidArgument);
}

TEST_CASE("predictions_csv layout") {
    Tensor y = Tensor::mat({{1.0, 2.0}, {3.0, 4.0}});
    PredictiveDistribution pred;
    pred.mean = Tensor::mat({{1.5, 2.5}, {3.5, 4.5}});
    pred.std = Tensor::mat({{0.5, 0.5}, {0.25, 0.25}});
    pred.sample_count = 2;
    pred.method = "ensemble";
    const std::string csv = predictions_csv(y, pred);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "example_id,step,y_true,mean,std");
    std::getline(in, line);
    CHECK(line == "0,1,1,1.5,0.5");
    std::getline(in, line);
    CHECK(line == "0,2,2,2.5,0.5");
    std::getline(in, line);
    CHECK(line == "1,1,3,3.5,0.25");
    std::getline(in, line);
    CHECK(line == "1,2,4,4.5,0.25");
    CHECK(!std::getline(in, line));
}

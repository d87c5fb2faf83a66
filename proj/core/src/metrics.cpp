#include "tsuq/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tsuq/error.hpp"

namespace tsuq::metrics {

namespace {
constexpr double kMapeCutoff = 1e-6;
constexpr double kSigmaFloor = 1e-6;
}  // namespace

double mape(const Tensor& y, const Tensor& mu) {
    require_same_shape(y, mu, "mape");
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::abs(y[i]) < kMapeCutoff) continue;
        acc += std::abs((y[i] - mu[i]) / y[i]);
        ++used;
    }
    if (used == 0) {
        throw UndefinedMetric("mape: every target is below the magnitude cutoff");
    }
    return 100.0 * acc / static_cast<double>(used);
}

double mse(const Tensor& y, const Tensor& mu) {
    require_same_shape(y, mu, "mse");
    if (y.size() == 0) throw InvalidArgument("mse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - mu[i];
        acc += r * r;
    }
    return acc / static_cast<double>(y.size());
}

double r2(const Tensor& y, const Tensor& mu) {
    require_same_shape(y, mu, "r2");
    if (y.size() == 0) throw InvalidArgument("r2: empty input");
    const double y_bar = mean(y);
    double sse = 0.0, sstot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - mu[i];
        const double d = y[i] - y_bar;
        sse += r * r;
        sstot += d * d;
    }
    if (sstot == 0.0) throw UndefinedMetric("r2: targets are constant");
    return 1.0 - sse / sstot;
}

double nll_metric(const Tensor& y, const Tensor& mu, const Tensor& sigma) {
    require_same_shape(y, mu, "nll_metric");
    require_same_shape(y, sigma, "nll_metric");
    if (y.size() == 0) throw InvalidArgument("nll_metric: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double s_raw = sigma[i];
        if (!(s_raw >= 0.0)) {
            throw InvalidArgument("nll_metric: sigma must be nonnegative and finite");
        }
        const double s = std::max(s_raw, kSigmaFloor);
        const double r = y[i] - mu[i];
        acc += std::log(s * s) + (r * r) / (s * s);
    }
    return acc / static_cast<double>(y.size());
}

MetricBundle bundle(const Tensor& y, const Tensor& mu, const Tensor& sigma,
                    const TargetScale& scale) {
    require_same_shape(y, mu, "bundle");
    require_same_shape(y, sigma, "bundle");

    Tensor y_orig(y.shape()), mu_orig(mu.shape());
    for (std::size_t i = 0; i < y.size(); ++i) {
        y_orig[i] = y[i] * scale.std + scale.mean;
        mu_orig[i] = mu[i] * scale.std + scale.mean;
    }

    MetricBundle b;
    b.mape = mape(y_orig, mu_orig);
    b.mse = mse(y, mu);
    b.r2 = r2(y, mu);
    b.ece = ece(reliability_curve(y, mu, sigma));
    b.nll = nll_metric(y, mu, sigma);
    return b;
}

}  // namespace tsuq::metrics

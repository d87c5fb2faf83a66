#include "tsuq/curves.hpp"

#include <algorithm>
#include <cmath>

#include "tsuq/error.hpp"

namespace tsuq::metrics {

namespace {

constexpr double kSigmaFloor = 1e-6;

// Shared sigma sanitation: reject negatives/NaN, apply the floor.
std::vector<double> floored_sigma(const Tensor& sigma, const char* op) {
    std::vector<double> out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double s = sigma[i];
        if (!(s >= 0.0)) {
            throw InvalidArgument(std::string(op) +
                                  ": sigma must be nonnegative and finite");
        }
        out[i] = std::max(s, kSigmaFloor);
    }
    return out;
}

}  // namespace

// Acklam's rational approximation to the probit function.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("normal_quantile: p must be in (0,1)");
    }
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double q, r;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
               q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

std::vector<double> default_levels() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

ReliabilityCurve reliability_curve(const Tensor& y, const Tensor& mu,
                                   const Tensor& sigma,
                                   const std::vector<double>& levels) {
    require_same_shape(y, mu, "reliability_curve");
    require_same_shape(y, sigma, "reliability_curve");
    if (y.size() == 0) throw InvalidArgument("reliability_curve: empty input");
    if (levels.empty()) throw InvalidArgument("reliability_curve: no levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0 && levels[i] < 1.0) ||
            (i > 0 && levels[i] <= levels[i - 1])) {
            throw InvalidArgument(
                "reliability_curve: levels must be strictly increasing in (0,1)");
        }
    }
    const std::vector<double> sig = floored_sigma(sigma, "reliability_curve");

    ReliabilityCurve curve;
    curve.levels = levels;
    curve.coverage.reserve(levels.size());
    const double n = static_cast<double>(y.size());
    for (const double p : levels) {
        const double z = normal_quantile(0.5 * (1.0 + p));
        std::size_t inside = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (std::abs(y[i] - mu[i]) <= z * sig[i]) ++inside;
        }
        curve.coverage.push_back(static_cast<double>(inside) / n);
    }
    return curve;
}

double ece(const ReliabilityCurve& curve) {
    if (curve.levels.empty() || curve.levels.size() != curve.coverage.size()) {
        throw InvalidArgument("ece: malformed curve");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < curve.levels.size(); ++i) {
        acc += std::abs(curve.coverage[i] - curve.levels[i]);
    }
    return acc / static_cast<double>(curve.levels.size());
}

ConfidenceErrorCurve error_vs_confidence(const Tensor& y, const Tensor& mu,
                                         const Tensor& sigma, std::size_t s) {
    require_same_shape(y, mu, "error_vs_confidence");
    require_same_shape(y, sigma, "error_vs_confidence");
    if (s < 2) throw InvalidArgument("error_vs_confidence: need at least 2 thresholds");
    if (y.size() == 0) throw InvalidArgument("error_vs_confidence: empty input");
    const std::vector<double> sig = floored_sigma(sigma, "error_vs_confidence");

    const auto [lo_it, hi_it] = std::minmax_element(sig.begin(), sig.end());
    const double lo = *lo_it, hi = *hi_it;

    ConfidenceErrorCurve curve;
    if (lo == hi) {
        // Degenerate spread: a single point carrying the overall MAE.
        double mae = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) mae += std::abs(y[i] - mu[i]);
        curve.x.push_back(0.0);
        curve.mae.push_back(mae / static_cast<double>(y.size()));
        curve.retained.push_back(y.size());
        return curve;
    }

    for (std::size_t k = 0; k < s; ++k) {
        // Last threshold is exactly the max so the retained set is never
        // emptied by rounding.
        const double frac = static_cast<double>(k) / static_cast<double>(s - 1);
        const double threshold = k + 1 == s ? hi : lo + frac * (hi - lo);
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (sig[i] >= threshold) {
                acc += std::abs(y[i] - mu[i]);
                ++count;
            }
        }
        if (count == 0) break;  // truncate the tail
        curve.x.push_back(frac);
        curve.mae.push_back(acc / static_cast<double>(count));
        curve.retained.push_back(count);
    }
    return curve;
}

}  // namespace tsuq::metrics

#include "tsuq/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsuq/error.hpp"

namespace tsuq::harness {

std::string to_string(QualLabel l) {
    switch (l) {
        case QualLabel::Good: return "Good";
        case QualLabel::Moderate: return "Moderate";
        case QualLabel::Bad: return "Bad";
    }
    return "?";
}

QualLabel qual_label_from_string(const std::string& s) {
    if (s == "Good") return QualLabel::Good;
    if (s == "Moderate") return QualLabel::Moderate;
    if (s == "Bad") return QualLabel::Bad;
    throw InvalidArgument("unknown qualitative label '" + s + "'");
}

namespace {

// Ranks with ties averaged (1-based).
std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// (max - min) / max(|median|, 1e-9); the "approximately constant" measure.
double relative_spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return (*hi - *lo) / std::max(std::abs(median(v)), 1e-9);
}

}  // namespace

double spearman_rho(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw InvalidArgument("spearman_rho: need two equal-length series of >= 2");
    }
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean_rank = (n + 1.0) / 2.0;

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - mean_rank;
        const double db = rb[i] - mean_rank;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return 0.0;
    return cov / std::sqrt(var_a * var_b);
}

QualLabel classify_horizon(const std::vector<metrics::MetricBundle>& per_step) {
    if (per_step.size() < 3) {
        throw InvalidArgument("classify_horizon: need at least 3 horizon steps");
    }
    const std::size_t n = per_step.size();
    std::vector<double> step(n), mape_v(n), mse_v(n), r2_v(n), ece_v(n), nll_v(n);
    for (std::size_t i = 0; i < n; ++i) {
        step[i] = static_cast<double>(i + 1);
        mape_v[i] = per_step[i].mape;
        mse_v[i] = per_step[i].mse;
        r2_v[i] = per_step[i].r2;
        ece_v[i] = per_step[i].ece;
        nll_v[i] = per_step[i].nll;
    }

    int satisfied = 0;
    if (spearman_rho(mape_v, step) >= 0.5) ++satisfied;
    if (spearman_rho(mse_v, step) >= 0.5) ++satisfied;
    if (spearman_rho(r2_v, step) <= -0.5) ++satisfied;
    if (relative_spread(ece_v) <= 0.5) ++satisfied;
    if (relative_spread(nll_v) <= 0.5) ++satisfied;

    if (satisfied >= 3) return QualLabel::Good;
    if (satisfied == 2) return QualLabel::Moderate;
    return QualLabel::Bad;
}

QualLabel classify_conf_error(const metrics::ConfidenceErrorCurve& curve) {
    const std::size_t n = curve.mae.size();
    if (n < 3) {
        throw InvalidArgument("classify_conf_error: need at least 3 curve points");
    }
    const auto [lo, hi] = std::minmax_element(curve.mae.begin(), curve.mae.end());
    const double range = *hi - *lo;

    std::size_t non_decreasing = 0;
    double largest_drop = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double delta = curve.mae[i + 1] - curve.mae[i];
        if (delta >= 0.0) ++non_decreasing;
        largest_drop = std::max(largest_drop, -delta);
    }
    const double f = static_cast<double>(non_decreasing) / static_cast<double>(n - 1);
    const double d = range > 0.0 ? largest_drop / range : 0.0;

    if (f >= 0.9 && d <= 0.1) return QualLabel::Good;
    if (f >= 0.7) return QualLabel::Moderate;
    return QualLabel::Bad;
}

}  // namespace tsuq::harness

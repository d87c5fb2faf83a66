#include "tsuq/frame.hpp"

#include <cmath>

#include "tsuq/error.hpp"

namespace tsuq::dataio {

FrameTable slice_rows(const FrameTable& f, std::size_t begin, std::size_t end) {
    if (begin > end || end > f.rows()) {
        throw InvalidArgument("slice_rows: bad range [" + std::to_string(begin) +
                              "," + std::to_string(end) + ") of " +
                              std::to_string(f.rows()) + " rows");
    }
    FrameTable out;
    out.feature_names = f.feature_names;
    out.target_col = f.target_col;
    out.timestamps.assign(f.timestamps.begin() + static_cast<std::ptrdiff_t>(begin),
                          f.timestamps.begin() + static_cast<std::ptrdiff_t>(end));
    const std::size_t cols = f.cols();
    out.features = Tensor({end - begin, cols});
    for (std::size_t r = begin; r < end; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out.features.at(r - begin, c) = f.features.at(r, c);
        }
    }
    return out;
}

std::pair<FrameTable, NormStats> standardize(const FrameTable& f,
                                             const NormStats* stats) {
    const std::size_t rows = f.rows();
    const std::size_t cols = f.cols();
    if (rows == 0) throw InvalidArgument("standardize: empty table");

    NormStats s;
    if (stats) {
        if (stats->mean.size() != cols || stats->std.size() != cols) {
            throw InvalidArgument("standardize: stats cover " +
                                  std::to_string(stats->mean.size()) +
                                  " features, table has " + std::to_string(cols));
        }
        s = *stats;
    } else {
        s.mean.resize(cols);
        s.std.resize(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            double m = 0.0;
            for (std::size_t r = 0; r < rows; ++r) m += f.features.at(r, c);
            m /= static_cast<double>(rows);
            double var = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                const double d = f.features.at(r, c) - m;
                var += d * d;
            }
            var /= static_cast<double>(rows);
            s.mean[c] = m;
            s.std[c] = std::sqrt(var);
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        if (!(s.std[c] > 0.0)) {
            throw ConfigError("standardize: feature '" + f.feature_names[c] +
                              "' has zero variance");
        }
    }

    FrameTable out = f;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out.features.at(r, c) = (f.features.at(r, c) - s.mean[c]) / s.std[c];
        }
    }
    return {std::move(out), std::move(s)};
}

FrameTable destandardize(const FrameTable& f, const NormStats& stats) {
    const std::size_t cols = f.cols();
    if (stats.mean.size() != cols || stats.std.size() != cols) {
        throw InvalidArgument("destandardize: stats/features mismatch");
    }
    FrameTable out = f;
    for (std::size_t r = 0; r < f.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out.features.at(r, c) = f.features.at(r, c) * stats.std[c] + stats.mean[c];
        }
    }
    return out;
}

}  // namespace tsuq::dataio

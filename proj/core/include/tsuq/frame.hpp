#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsuq/tensor.hpp"

namespace tsuq::dataio {

// A cleaned time series: T rows of F features at strictly increasing
// timestamps, with one feature designated as the forecast target.
struct FrameTable {
    std::vector<std::int64_t> timestamps;
    Tensor features;  // T x F
    std::vector<std::string> feature_names;
    std::size_t target_col = 0;

    std::size_t rows() const { return timestamps.size(); }
    std::size_t cols() const {
        return features.rank() == 2 ? features.dim(1) : 0;
    }
};

// Per-feature z-score statistics, taken from the training rows.
struct NormStats {
    std::vector<double> mean;
    std::vector<double> std;

    bool empty() const { return mean.empty(); }
};

// Rows [begin, end) with metadata preserved.
FrameTable slice_rows(const FrameTable& f, std::size_t begin, std::size_t end);

// z-scores every feature. With stats == nullptr the statistics are computed
// from f itself (population std) and returned; otherwise the given stats are
// applied unchanged. A zero-variance feature raises ConfigError naming it.
std::pair<FrameTable, NormStats> standardize(const FrameTable& f,
                                             const NormStats* stats = nullptr);

// Inverse of standardize for round-trip checks.
FrameTable destandardize(const FrameTable& f, const NormStats& stats);

}  // namespace tsuq::dataio

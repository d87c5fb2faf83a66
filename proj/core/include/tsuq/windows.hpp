#pragma once

#include <utility>

#include "tsuq/frame.hpp"

namespace tsuq::dataio {

// Supervised forecasting pairs cut from one series: x holds `past`
// consecutive feature rows, y the target value at offsets +1..+horizon
// after the window.
struct WindowSet {
    Tensor x;  // n x past x F
    Tensor y;  // n x horizon
    std::size_t past = 12;
    std::size_t horizon = 1;

    // Statistics the series was standardized with (empty when raw), plus
    // the target feature's scale for converting predictions back to
    // original units.
    NormStats norm_stats;
    double target_mean = 0.0;
    double target_std = 1.0;

    // The series the windows were cut from; split() re-windows it.
    FrameTable source;

    std::size_t count() const { return x.rank() == 3 ? x.dim(0) : 0; }
};

// Stride-1 sliding windows over f. If stats is given it is recorded as the
// set's normalization metadata (f is assumed already standardized with it).
WindowSet make_windows(const FrameTable& f, std::size_t past = 12,
                       std::size_t horizon = 1, const NormStats* stats = nullptr);

// Chronological split: the underlying series is cut at
// floor(rows * train_fraction) and each side is re-windowed, so no test
// window reaches back across the boundary.
std::pair<WindowSet, WindowSet> split(const WindowSet& w, double train_fraction = 0.8);

// Window cache: binary tensors (shape header + row-major float64) in
// `path`, norm stats as text in `path + ".stats"`. The source series is
// not cached; a loaded set cannot be re-split.
void save_window_cache(const WindowSet& w, const std::string& path);
WindowSet load_window_cache(const std::string& path);

}  // namespace tsuq::dataio

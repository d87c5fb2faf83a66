#pragma once

#include "tsuq/frame.hpp"

namespace tsuq::dataio {

enum class SynthKind { Sine, Ar1, Linear };

SynthKind synth_kind_from_string(const std::string& s);
std::string to_string(SynthKind k);

// Single-feature toy series (the feature is the target):
//   sine:   sin(2*pi*t/24) + noise
//   ar1:    x_0 = 1, x_{t+1} = 0.9 x_t + noise
//   linear: 0.01 t + noise
// noise ~ N(0, noise_std^2), drawn from RngStream(seed). n must be >= 30.
FrameTable synth_series(SynthKind kind, std::size_t n, double noise_std,
                        std::uint64_t seed);

}  // namespace tsuq::dataio

#include "tsuq/synth.hpp"

#include <cmath>
#include <numbers>

#include "tsuq/error.hpp"
#include "tsuq/rng.hpp"

namespace tsuq::dataio {

SynthKind synth_kind_from_string(const std::string& s) {
    if (s == "sine") return SynthKind::Sine;
    if (s == "ar1") return SynthKind::Ar1;
    if (s == "linear") return SynthKind::Linear;
    throw ConfigError("unknown synthetic series kind '" + s +
                      "' (expected sine|ar1|linear)");
}

std::string to_string(SynthKind k) {
    switch (k) {
        case SynthKind::Sine: return "sine";
        case SynthKind::Ar1: return "ar1";
        case SynthKind::Linear: return "linear";
    }
    return "?";
}

FrameTable synth_series(SynthKind kind, std::size_t n, double noise_std,
                        std::uint64_t seed) {
    if (n < 30) throw InvalidArgument("synth_series: n must be >= 30");
    if (noise_std < 0.0) throw InvalidArgument("synth_series: noise_std must be >= 0");

    RngStream rng(seed);
    auto noise = [&] { return noise_std > 0.0 ? noise_std * rng.gaussian() : 0.0; };

    FrameTable f;
    f.feature_names = {to_string(kind)};
    f.target_col = 0;
    f.timestamps.resize(n);
    std::vector<double> values(n);

    switch (kind) {
        case SynthKind::Sine:
            for (std::size_t t = 0; t < n; ++t) {
                values[t] = std::sin(2.0 * std::numbers::pi *
                                     static_cast<double>(t) / 24.0) +
                            noise();
            }
            break;
        case SynthKind::Ar1: {
            double x = 1.0;
            for (std::size_t t = 0; t < n; ++t) {
                values[t] = x;
                x = 0.9 * x + noise();
            }
            break;
        }
        case SynthKind::Linear:
            for (std::size_t t = 0; t < n; ++t) {
                values[t] = 0.01 * static_cast<double>(t) + noise();
            }
            break;
    }

    for (std::size_t t = 0; t < n; ++t) f.timestamps[t] = static_cast<std::int64_t>(t);
    f.features = Tensor({n, 1}, std::move(values));
    return f;
}

}  // namespace tsuq::dataio

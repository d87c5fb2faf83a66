#include "tsuq/rng.hpp"

#include <cmath>
#include <numbers>

namespace tsuq {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : key_(mix(seed ^ kGolden)), counter_(0) {}

RngStream RngStream::split(std::uint64_t label) const {
    // Child key depends on the parent key and the label only, never on how
    // many draws the parent has made.
    return RngStream(mix(key_ ^ mix(label + kGolden)), 0);
}

RngStream RngStream::split(std::string_view label) const {
    return split(fnv1a(label));
}

std::uint64_t RngStream::next_u64() {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::bernoulli(double keep_prob) {
    return uniform01() < keep_prob ? 1.0 : 0.0;
}

double RngStream::rademacher() {
    return (next_u64() >> 63) ? 1.0 : -1.0;
}

Tensor sample_gaussian(std::vector<std::size_t> shape, double mean, double std,
                       RngStream& rng) {
    if (!(std >= 0.0)) {
        throw InvalidArgument("sample_gaussian: std must be >= 0");
    }
    Tensor out(std::move(shape));
    for (double& v : out.data()) v = mean + std * rng.gaussian();
    return out;
}

Tensor sample_bernoulli_mask(std::vector<std::size_t> shape, double keep_prob,
                             RngStream& rng) {
    if (!(keep_prob >= 0.0 && keep_prob <= 1.0)) {
        throw InvalidArgument("sample_bernoulli_mask: keep_prob must be in [0, 1]");
    }
    Tensor out(std::move(shape));
    for (double& v : out.data()) v = rng.bernoulli(keep_prob);
    return out;
}

Tensor sample_rademacher(std::vector<std::size_t> shape, RngStream& rng) {
    Tensor out(std::move(shape));
    for (double& v : out.data()) v = rng.rademacher();
    return out;
}

Tensor sample_uniform(std::vector<std::size_t> shape, double limit, RngStream& rng) {
    if (!(limit >= 0.0)) throw InvalidArgument("sample_uniform: limit must be >= 0");
    Tensor out(std::move(shape));
    for (double& v : out.data()) v = limit * (2.0 * rng.uniform01() - 1.0);
    return out;
}

}  // namespace tsuq

#pragma once

#include <cstdint>
#include <string_view>

#include "tsuq/tensor.hpp"

namespace tsuq {

// Counter-based random stream: state is (key, counter) and every draw is a
// pure hash of it, so equal seeds and call sequences reproduce bit-exactly.
// split(label) derives an independent child stream keyed off the parent's
// seed key only; the parent's own draws never affect the child.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    RngStream split(std::uint64_t label) const;
    RngStream split(std::string_view label) const;

    std::uint64_t next_u64();
    double uniform01();          // [0, 1)
    double gaussian();           // standard normal, Box-Muller (no caching)
    double bernoulli(double keep_prob);  // 1.0 with probability keep_prob, else 0.0
    double rademacher();         // -1.0 or +1.0, equiprobable

    std::uint64_t seed_key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    RngStream(std::uint64_t key, std::uint64_t counter)
        : key_(key), counter_(counter) {}

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

// i.i.d. Normal(mean, std^2) values; std must be >= 0.
Tensor sample_gaussian(std::vector<std::size_t> shape, double mean, double std,
                       RngStream& rng);

// 0/1 mask; each entry is 1 with probability keep_prob in [0, 1].
Tensor sample_bernoulli_mask(std::vector<std::size_t> shape, double keep_prob,
                             RngStream& rng);

// Entries in {-1, +1} with probability 1/2 each.
Tensor sample_rademacher(std::vector<std::size_t> shape, RngStream& rng);

// Uniform(-limit, limit), used for fan-in weight initialization.
Tensor sample_uniform(std::vector<std::size_t> shape, double limit, RngStream& rng);

}  // namespace tsuq

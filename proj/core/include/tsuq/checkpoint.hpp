#pragma once

#include "tsuq/model.hpp"

namespace tsuq::nn {

// Everything needed to resume or evaluate a trained model.
struct Checkpoint {
    Model model;
    std::uint64_t seed = 0;
};

// Self-describing JSON: config, training seed, and every parameter tensor
// (shape + row-major float64). Doubles are serialized so that
// save -> load -> predict is bit-exact.
void save_checkpoint(Model& model, std::uint64_t seed, const std::string& path);

// Rebuilds the layer stack from the stored config and overwrites all
// parameters. Throws FormatError on version/kind/shape mismatches.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace tsuq::nn

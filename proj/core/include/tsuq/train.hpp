#pragma once

#include "tsuq/model.hpp"
#include "tsuq/windows.hpp"

namespace tsuq::nn {

enum class LossKind { Mse, GaussianNll };

LossKind loss_kind_from_string(const std::string& s);
std::string to_string(LossKind k);

struct TrainConfig {
    double learning_rate = 0.001;
    std::size_t epochs = 100;
    std::size_t batch_size = 32;
    LossKind loss = LossKind::Mse;
    // Multiplier on the per-epoch KL term for variational methods; each
    // batch adds (kl_weight / batches_per_epoch) * KL to its objective.
    double kl_weight = 1.0;
    std::uint64_t seed = 0;
};

// The loss the method is trained with: Gaussian NLL for the aleatoric
// Baseline head, plain MSE for everything else.
LossKind default_loss(UqMethod m);

// Minibatch Adam over shuffled windows. Stochastic layers draw fresh
// masks/weights per batch; the BBB/Flipout objective adds the weighted KL
// term. Returns the per-epoch mean training loss. Same model/rng seeds give
// a bit-identical history. Throws TrainingDiverged when a batch loss turns
// non-finite.
std::vector<double> train(Model& model, const dataio::WindowSet& windows,
                          const TrainConfig& tcfg, RngStream& rng);

}  // namespace tsuq::nn

#pragma once

#include <string>

#include "tsuq/experiment.hpp"

namespace tsuq::harness {

// Parses an INI-style experiment file into an ExperimentConfig.
//
//   [experiment]            [model]                [train]
//   dataset = sine          architecture = mlp     learning_rate = 0.001
//   synth_n = 2000          uq_method = dropout    epochs = 100
//   synth_noise = 0.1       hidden_units = 32      batch_size = 32
//   synth_seed = 42         hidden_layers = 2      loss = auto
//   data_path = ...         horizon = 1            kl_weight = 1.0
//   out_dir = ...           window = 12            seed = 0
//   mode = single           drop_prob = 0.2
//   train_fraction = 0.8    mc_samples = 50
//                           ensemble_size = 10
//
// '#' and ';' start comments, blank lines are skipped, keys and values are
// trimmed. Unknown sections or keys raise ConfigError naming the offender.
// `loss` accepts auto|mse|nll; anything but auto pins the loss explicitly.
ExperimentConfig load_experiment_config(const std::string& path);

// Applies one "section.key=value" override (the CLI's --set flag) on top of
// an already-loaded config. Same keys and ConfigError behaviour as the file
// parser.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

}  // namespace tsuq::harness

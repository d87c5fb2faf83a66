#include "tsuq/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

namespace tsuq::harness {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
    const auto pos = line.find_first_of("#;");
    return pos == std::string::npos ? line : line.substr(0, pos);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': expected a number, got '" + value + "'");
    }
}

long long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': expected an integer, got '" + value +
                          "'");
    }
}

std::size_t to_count(const std::string& key, const std::string& value) {
    const long long v = to_int(key, value);
    if (v < 0) throw ConfigError("'" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

void apply_experiment_kv(ExperimentConfig& cfg, const std::string& key,
                         const std::string& value) {
    if (key == "dataset") {
        cfg.dataset = value;
    } else if (key == "data_path") {
        cfg.data_path = value;
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "mode") {
        if (value == "single") {
            cfg.mode = HorizonMode::Single;
        } else if (value == "sweep") {
            cfg.mode = HorizonMode::Sweep;
        } else {
            throw ConfigError("'mode': expected single or sweep, got '" + value +
                              "'");
        }
    } else if (key == "train_fraction") {
        cfg.train_fraction = to_double(key, value);
    } else if (key == "sweep_horizon") {
        cfg.sweep_horizon = to_count(key, value);
    } else if (key == "synth_n") {
        cfg.synth_n = to_count(key, value);
    } else if (key == "synth_noise") {
        cfg.synth_noise = to_double(key, value);
    } else if (key == "synth_seed") {
        cfg.synth_seed = static_cast<std::uint64_t>(to_int(key, value));
    } else {
        throw ConfigError("unknown key 'experiment." + key + "'");
    }
}

void apply_model_kv(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
    nn::ModelConfig& m = cfg.model;
    if (key == "architecture") {
        m.architecture = nn::architecture_from_string(value);
    } else if (key == "uq_method") {
        m.uq_method = nn::uq_method_from_string(value);
    } else if (key == "hidden_units") {
        m.hidden_units = to_count(key, value);
    } else if (key == "hidden_layers") {
        m.hidden_layers = to_count(key, value);
    } else if (key == "horizon") {
        m.horizon = to_count(key, value);
    } else if (key == "window") {
        m.window = to_count(key, value);
    } else if (key == "drop_prob") {
        m.drop_prob = to_double(key, value);
    } else if (key == "mc_samples") {
        m.mc_samples = to_count(key, value);
    } else if (key == "ensemble_size") {
        m.ensemble_size = to_count(key, value);
    } else {
        // `features` deliberately missing: it always follows the dataset.
        throw ConfigError("unknown key 'model." + key + "'");
    }
}

void apply_train_kv(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
    nn::TrainConfig& t = cfg.train;
    if (key == "learning_rate") {
        t.learning_rate = to_double(key, value);
    } else if (key == "epochs") {
        t.epochs = to_count(key, value);
    } else if (key == "batch_size") {
        t.batch_size = to_count(key, value);
    } else if (key == "loss") {
        if (value == "auto") {
            cfg.auto_loss = true;
        } else {
            t.loss = nn::loss_kind_from_string(value);
            cfg.auto_loss = false;
        }
    } else if (key == "kl_weight") {
        t.kl_weight = to_double(key, value);
    } else if (key == "seed") {
        t.seed = static_cast<std::uint64_t>(to_int(key, value));
    } else {
        throw ConfigError("unknown key 'train." + key + "'");
    }
}

void apply_kv(ExperimentConfig& cfg, const std::string& section,
              const std::string& key, const std::string& value) {
    if (key.empty()) throw ConfigError("empty key in section [" + section + "]");
    if (section == "experiment") {
        apply_experiment_kv(cfg, key, value);
    } else if (section == "model") {
        apply_model_kv(cfg, key, value);
    } else if (section == "train") {
        apply_train_kv(cfg, key, value);
    } else {
        throw ConfigError("unknown section [" + section + "]");
    }
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);

    ExperimentConfig cfg;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        try {
            if (body.front() == '[') {
                if (body.back() != ']') {
                    throw ConfigError("malformed section header '" + body + "'");
                }
                section = trim(body.substr(1, body.size() - 2));
                if (section != "experiment" && section != "model" &&
                    section != "train") {
                    throw ConfigError("unknown section [" + section + "]");
                }
                continue;
            }
            const auto eq = body.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("expected key = value, got '" + body + "'");
            }
            if (section.empty()) {
                throw ConfigError("key before any [section] header");
            }
            apply_kv(cfg, section, trim(body.substr(0, eq)),
                     trim(body.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
    return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override must look like section.key=value, got '" +
                          assignment + "'");
    }
    const std::string target = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = target.find('.');
    if (dot == std::string::npos) {
        throw ConfigError("override key needs a section prefix "
                          "(experiment.|model.|train.), got '" +
                          target + "'");
    }
    apply_kv(cfg, target.substr(0, dot), target.substr(dot + 1), value);
}

}  // namespace tsuq::harness

#include "tsuq/checkpoint.hpp"

#include <json.hpp>

#include "tsuq/io_util.hpp"

namespace tsuq::nn {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "tsuq-checkpoint";
constexpr int kVersion = 1;

json tensor_to_json(const Tensor& t) {
    json j;
    j["shape"] = t.shape();
    j["data"] = std::vector<double>(t.data().begin(), t.data().end());
    return j;
}

Tensor tensor_from_json(const json& j, const std::string& ctx) {
    if (!j.contains("shape") || !j.contains("data")) {
        throw FormatError(ctx + ": tensor entry missing shape/data");
    }
    auto shape = j["shape"].get<std::vector<std::size_t>>();
    auto data = j["data"].get<std::vector<double>>();
    std::size_t expect = 1;
    for (std::size_t d : shape) expect *= d;
    if (expect != data.size()) {
        throw FormatError(ctx + ": tensor data length does not match shape");
    }
    return Tensor(std::move(shape), std::move(data));
}

json config_to_json(const ModelConfig& cfg) {
    json j;
    j["architecture"] = to_string(cfg.architecture);
    j["uq_method"] = to_string(cfg.uq_method);
    j["hidden_units"] = cfg.hidden_units;
    j["hidden_layers"] = cfg.hidden_layers;
    j["horizon"] = cfg.horizon;
    j["window"] = cfg.window;
    j["features"] = cfg.features;
    j["drop_prob"] = cfg.drop_prob;
    j["mc_samples"] = cfg.mc_samples;
    j["ensemble_size"] = cfg.ensemble_size;
    return j;
}

ModelConfig config_from_json(const json& j, const std::string& ctx) {
    try {
        ModelConfig cfg;
        cfg.architecture = architecture_from_string(j.at("architecture"));
        cfg.uq_method = uq_method_from_string(j.at("uq_method"));
        cfg.hidden_units = j.at("hidden_units");
        cfg.hidden_layers = j.at("hidden_layers");
        cfg.horizon = j.at("horizon");
        cfg.window = j.at("window");
        cfg.features = j.at("features");
        cfg.drop_prob = j.at("drop_prob");
        cfg.mc_samples = j.at("mc_samples");
        cfg.ensemble_size = j.at("ensemble_size");
        return cfg;
    } catch (const json::exception& e) {
        throw FormatError(ctx + ": bad config block: " + e.what());
    }
}

}  // namespace

void save_checkpoint(Model& model, std::uint64_t seed, const std::string& path) {
    json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["config"] = config_to_json(model.config());

    json layers = json::array();
    for (std::size_t i = 0; i < model.layer_count(); ++i) {
        Layer& l = model.layer(i);
        json lj;
        lj["kind"] = l.kind();
        json params = json::object();
        const auto names = l.param_names();
        const auto tensors = l.params();
        for (std::size_t k = 0; k < names.size(); ++k) {
            params[names[k]] = tensor_to_json(*tensors[k]);
        }
        lj["params"] = params;
        layers.push_back(std::move(lj));
    }
    j["layers"] = std::move(layers);

    atomic_write_file(path, j.dump(1) + "\n");
}

Checkpoint load_checkpoint(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw FormatError(path + ": not valid JSON: " + e.what());
    }
    if (j.value("format", "") != kFormat) {
        throw FormatError(path + ": not a model checkpoint");
    }
    if (j.value("version", -1) != kVersion) {
        throw FormatError(path + ": unsupported checkpoint version");
    }

    const ModelConfig cfg = config_from_json(j.at("config"), path);
    RngStream scratch(0);
    Model model = build_model(cfg, scratch);

    const json& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != model.layer_count()) {
        throw FormatError(path + ": layer count does not match the stored config");
    }
    for (std::size_t i = 0; i < model.layer_count(); ++i) {
        Layer& l = model.layer(i);
        const json& lj = layers[i];
        if (lj.value("kind", "") != l.kind()) {
            throw FormatError(path + ": layer " + std::to_string(i) + " is '" +
                              lj.value("kind", "") + "', expected '" + l.kind() + "'");
        }
        const auto names = l.param_names();
        const auto tensors = l.params();
        const json& params = lj.at("params");
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (!params.contains(names[k])) {
                throw FormatError(path + ": layer " + std::to_string(i) +
                                  " missing parameter '" + names[k] + "'");
            }
            Tensor t = tensor_from_json(params[names[k]],
                                        path + ": layer " + std::to_string(i));
            if (!t.same_shape(*tensors[k])) {
                throw FormatError(path + ": layer " + std::to_string(i) +
                                  " parameter '" + names[k] + "' has shape " +
                                  t.shape_str() + ", expected " +
                                  tensors[k]->shape_str());
            }
            *tensors[k] = std::move(t);
        }
    }

    std::uint64_t seed = j.value("seed", 0ull);
    return Checkpoint{std::move(model), seed};
}

}  // namespace tsuq::nn

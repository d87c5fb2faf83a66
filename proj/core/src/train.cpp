#include "tsuq/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsuq/adam.hpp"
#include "tsuq/losses.hpp"

namespace tsuq::nn {

LossKind loss_kind_from_string(const std::string& s) {
    if (s == "mse") return LossKind::Mse;
    if (s == "nll") return LossKind::GaussianNll;
    throw ConfigError("unknown loss '" + s + "' (expected mse|nll)");
}

std::string to_string(LossKind k) {
    return k == LossKind::Mse ? "mse" : "nll";
}

LossKind default_loss(UqMethod m) {
    return m == UqMethod::Baseline ? LossKind::GaussianNll : LossKind::Mse;
}

namespace {

// Rows of a rank-2/3 tensor picked by index, in order.
Tensor gather_rows(const Tensor& t, const std::vector<std::size_t>& idx,
                   std::size_t from, std::size_t to) {
    const std::size_t count = to - from;
    const std::size_t row = t.size() / t.dim(0);
    std::vector<std::size_t> shape = t.shape();
    shape[0] = count;
    Tensor out(std::move(shape));
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t src = idx[from + k];
        for (std::size_t j = 0; j < row; ++j) out[k * row + j] = t[src * row + j];
    }
    return out;
}

void fisher_yates(std::vector<std::size_t>& idx, RngStream& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i));
        std::swap(idx[i - 1], idx[j < i ? j : i - 1]);
    }
}

}  // namespace

std::vector<double> train(Model& model, const dataio::WindowSet& windows,
                          const TrainConfig& tcfg, RngStream& rng) {
    const std::size_t n = windows.count();
    if (n == 0) throw InvalidArgument("train: empty window set");
    if (tcfg.epochs < 1) throw InvalidArgument("train: epochs must be >= 1");
    if (tcfg.batch_size < 1) throw InvalidArgument("train: batch_size must be >= 1");
    if (!(tcfg.learning_rate > 0.0)) {
        throw InvalidArgument("train: learning_rate must be > 0");
    }

    const UqMethod method = model.config().uq_method;
    if (tcfg.loss == LossKind::GaussianNll && method != UqMethod::Baseline) {
        throw WrongMethod("train: Gaussian NLL loss requires a baseline model");
    }
    if (tcfg.loss == LossKind::Mse && method == UqMethod::Baseline) {
        throw WrongMethod("train: baseline models train on the Gaussian NLL loss");
    }
    if (windows.y.dim(1) != model.config().horizon) {
        throw InvalidArgument("train: windows have horizon " +
                              std::to_string(windows.y.dim(1)) + ", model expects " +
                              std::to_string(model.config().horizon));
    }

    const bool variational =
        method == UqMethod::Bbb || method == UqMethod::Flipout;
    const std::size_t horizon = model.config().horizon;
    const std::size_t num_batches = (n + tcfg.batch_size - 1) / tcfg.batch_size;
    const double kl_scale = tcfg.kl_weight / static_cast<double>(num_batches);
    constexpr double kPriorStd = 1.0;

    RngStream shuffle_rng = rng.split("shuffle");
    RngStream layer_rng = rng.split("layers");

    AdamOptimizer opt(model.params(), model.grads(), tcfg.learning_rate);

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);

    std::vector<double> history;
    history.reserve(tcfg.epochs);

    for (std::size_t epoch = 1; epoch <= tcfg.epochs; ++epoch) {
        fisher_yates(idx, shuffle_rng);
        double epoch_loss = 0.0;

        for (std::size_t b = 0; b < num_batches; ++b) {
            const std::size_t from = b * tcfg.batch_size;
            const std::size_t to = std::min(from + tcfg.batch_size, n);
            const Tensor xb = gather_rows(windows.x, idx, from, to);
            const Tensor yb = gather_rows(windows.y, idx, from, to);

            model.zero_grad();
            const Tensor out = model.forward(xb, &layer_rng, /*stochastic=*/true);

            double loss;
            Tensor d_out;
            if (tcfg.loss == LossKind::GaussianNll) {
                const Tensor mu = col_range(out, 0, horizon);
                const Tensor log_var = col_range(out, horizon, 2 * horizon);
                loss = gaussian_nll_loss(mu, log_var, yb);
                auto [d_mu, d_lv] = gaussian_nll_grads(mu, log_var, yb);
                d_out = Tensor(out.shape());
                assign_col_range(d_out, 0, d_mu);
                assign_col_range(d_out, horizon, d_lv);
            } else {
                loss = mse_loss(out, yb);
                d_out = mse_grad(out, yb);
            }
            if (variational) loss += kl_scale * model.kl(kPriorStd);

            if (!std::isfinite(loss)) {
                throw TrainingDiverged(static_cast<int>(epoch),
                                       "training loss became non-finite in epoch " +
                                           std::to_string(epoch));
            }

            model.backward(d_out);
            if (variational) model.add_kl_grads(kl_scale, kPriorStd);
            opt.step();

            epoch_loss += loss;
        }
        history.push_back(epoch_loss / static_cast<double>(num_batches));
    }
    return history;
}

}  // namespace tsuq::nn

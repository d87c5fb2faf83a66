#pragma once

#include <utility>

#include "tsuq/layer.hpp"

namespace tsuq::nn {

// Standard LSTM cell parameters, gate order i, f, o, g.
struct LstmParams {
    Tensor w_i, w_f, w_o, w_g;  // in x units
    Tensor u_i, u_f, u_o, u_g;  // units x units
    Tensor b_i, b_f, b_o, b_g;  // units
};

LstmParams init_lstm_params(std::size_t in, std::size_t units, RngStream& rng);

// One cell update:
//   i = sig(xW_i + hU_i + b_i), f = sig(...), o = sig(...), g = tanh(...)
//   c' = f o c + i o g,  h' = o o tanh(c')
// Returns (h', c').
std::pair<Tensor, Tensor> lstm_step(const Tensor& x_t, const Tensor& h,
                                    const Tensor& c, const LstmParams& p);

// Unrolled LSTM over a (batch x T x in) sequence. With return_sequences the
// output is (batch x T x units), otherwise the last hidden state
// (batch x units). backward() runs truncation-free BPTT over the whole
// sequence.
class LstmLayer : public Layer {
public:
    LstmLayer(std::size_t in, std::size_t units, bool return_sequences,
              RngStream& rng);
    LstmLayer(LstmParams p, bool return_sequences);

    Tensor forward(const Tensor& x, RngStream* rng, bool stochastic) override;
    Tensor backward(const Tensor& dy) override;

    std::vector<Tensor*> params() override;
    std::vector<Tensor*> grads() override;
    std::vector<std::string> param_names() const override;
    std::string kind() const override { return "lstm"; }

    std::size_t units() const { return units_; }
    bool return_sequences() const { return return_sequences_; }

private:
    LstmParams p_, g_;
    std::size_t in_ = 0, units_ = 0;
    bool return_sequences_;

    // Per-timestep forward caches for BPTT.
    struct StepCache {
        Tensor x, h_prev, c_prev;
        Tensor i, f, o, g, c, tanh_c;
    };
    std::vector<StepCache> steps_;
    std::size_t batch_ = 0, time_ = 0;
};

}  // namespace tsuq::nn

#include "tsuq/lstm.hpp"

#include <cmath>

namespace tsuq::nn {

namespace {

void check_lstm_shapes(const Tensor& x_t, const Tensor& h, const Tensor& c,
                       const LstmParams& p) {
    const std::size_t units = p.b_i.dim(0);
    if (x_t.rank() != 2 || h.rank() != 2 || c.rank() != 2 ||
        x_t.dim(1) != p.w_i.dim(0) || h.dim(1) != units || c.dim(1) != units ||
        x_t.dim(0) != h.dim(0) || h.dim(0) != c.dim(0)) {
        throw InvalidArgument("lstm_step: incompatible shapes x=" +
                              x_t.shape_str() + " h=" + h.shape_str() +
                              " c=" + c.shape_str());
    }
}

Tensor gate_preact(const Tensor& x, const Tensor& h, const Tensor& w,
                   const Tensor& u, const Tensor& b) {
    Tensor z = matmul(x, w);
    add_inplace(z, matmul(h, u));
    return add_rowwise(z, b);
}

void sigmoid_inplace(Tensor& t) {
    for (double& v : t.data()) v = sigmoid(v);
}

void tanh_inplace(Tensor& t) {
    for (double& v : t.data()) v = std::tanh(v);
}

}  // namespace

LstmParams init_lstm_params(std::size_t in, std::size_t units, RngStream& rng) {
    const double lim_w = std::sqrt(6.0 / static_cast<double>(in + units));
    const double lim_u = std::sqrt(6.0 / static_cast<double>(units + units));
    LstmParams p;
    p.w_i = sample_uniform({in, units}, lim_w, rng);
    p.w_f = sample_uniform({in, units}, lim_w, rng);
    p.w_o = sample_uniform({in, units}, lim_w, rng);
    p.w_g = sample_uniform({in, units}, lim_w, rng);
    p.u_i = sample_uniform({units, units}, lim_u, rng);
    p.u_f = sample_uniform({units, units}, lim_u, rng);
    p.u_o = sample_uniform({units, units}, lim_u, rng);
    p.u_g = sample_uniform({units, units}, lim_u, rng);
    p.b_i = Tensor({units});
    p.b_f = Tensor({units});
    p.b_o = Tensor({units});
    p.b_g = Tensor({units});
    return p;
}

std::pair<Tensor, Tensor> lstm_step(const Tensor& x_t, const Tensor& h,
                                    const Tensor& c, const LstmParams& p) {
    check_lstm_shapes(x_t, h, c, p);
    Tensor i = gate_preact(x_t, h, p.w_i, p.u_i, p.b_i);
    Tensor f = gate_preact(x_t, h, p.w_f, p.u_f, p.b_f);
    Tensor o = gate_preact(x_t, h, p.w_o, p.u_o, p.b_o);
    Tensor g = gate_preact(x_t, h, p.w_g, p.u_g, p.b_g);
    sigmoid_inplace(i);
    sigmoid_inplace(f);
    sigmoid_inplace(o);
    tanh_inplace(g);
    Tensor c_new = add(mul(f, c), mul(i, g));
    Tensor tanh_c = c_new;
    tanh_inplace(tanh_c);
    return {mul(o, tanh_c), std::move(c_new)};
}

LstmLayer::LstmLayer(std::size_t in, std::size_t units, bool return_sequences,
                     RngStream& rng)
    : LstmLayer(init_lstm_params(in, units, rng), return_sequences) {}

LstmLayer::LstmLayer(LstmParams p, bool return_sequences)
    : p_(std::move(p)), return_sequences_(return_sequences) {
    in_ = p_.w_i.dim(0);
    units_ = p_.w_i.dim(1);
    g_.w_i = Tensor({in_, units_});
    g_.w_f = Tensor({in_, units_});
    g_.w_o = Tensor({in_, units_});
    g_.w_g = Tensor({in_, units_});
    g_.u_i = Tensor({units_, units_});
    g_.u_f = Tensor({units_, units_});
    g_.u_o = Tensor({units_, units_});
    g_.u_g = Tensor({units_, units_});
    g_.b_i = Tensor({units_});
    g_.b_f = Tensor({units_});
    g_.b_o = Tensor({units_});
    g_.b_g = Tensor({units_});
}

std::vector<Tensor*> LstmLayer::params() {
    return {&p_.w_i, &p_.w_f, &p_.w_o, &p_.w_g, &p_.u_i, &p_.u_f,
            &p_.u_o, &p_.u_g, &p_.b_i, &p_.b_f, &p_.b_o, &p_.b_g};
}

std::vector<Tensor*> LstmLayer::grads() {
    return {&g_.w_i, &g_.w_f, &g_.w_o, &g_.w_g, &g_.u_i, &g_.u_f,
            &g_.u_o, &g_.u_g, &g_.b_i, &g_.b_f, &g_.b_o, &g_.b_g};
}

std::vector<std::string> LstmLayer::param_names() const {
    return {"w_i", "w_f", "w_o", "w_g", "u_i", "u_f",
            "u_o", "u_g", "b_i", "b_f", "b_o", "b_g"};
}

Tensor LstmLayer::forward(const Tensor& x, RngStream*, bool) {
    if (x.rank() != 3 || x.dim(2) != in_) {
        throw InvalidArgument("lstm: expected (batch x T x " +
                              std::to_string(in_) + "), got " + x.shape_str());
    }
    batch_ = x.dim(0);
    time_ = x.dim(1);
    steps_.clear();
    steps_.reserve(time_);

    Tensor h({batch_, units_});
    Tensor c({batch_, units_});
    Tensor out_seq;
    if (return_sequences_) out_seq = Tensor({batch_, time_, units_});

    for (std::size_t t = 0; t < time_; ++t) {
        StepCache s;
        s.x = select_step(x, t);
        s.h_prev = h;
        s.c_prev = c;
        s.i = gate_preact(s.x, h, p_.w_i, p_.u_i, p_.b_i);
        s.f = gate_preact(s.x, h, p_.w_f, p_.u_f, p_.b_f);
        s.o = gate_preact(s.x, h, p_.w_o, p_.u_o, p_.b_o);
        s.g = gate_preact(s.x, h, p_.w_g, p_.u_g, p_.b_g);
        sigmoid_inplace(s.i);
        sigmoid_inplace(s.f);
        sigmoid_inplace(s.o);
        tanh_inplace(s.g);
        c = add(mul(s.f, c), mul(s.i, s.g));
        s.c = c;
        s.tanh_c = c;
        tanh_inplace(s.tanh_c);
        h = mul(s.o, s.tanh_c);
        if (return_sequences_) assign_step(out_seq, t, h);
        steps_.push_back(std::move(s));
    }
    return return_sequences_ ? out_seq : h;
}

Tensor LstmLayer::backward(const Tensor& dy) {
    Tensor dx({batch_, time_, in_});
    Tensor dh({batch_, units_});
    Tensor dc({batch_, units_});

    for (std::size_t ti = time_; ti-- > 0;) {
        const StepCache& s = steps_[ti];
        if (return_sequences_) {
            add_inplace(dh, select_step(dy, ti));
        } else if (ti == time_ - 1) {
            add_inplace(dh, dy);
        }

        // h = o o tanh(c)
        Tensor d_o = mul(dh, s.tanh_c);
        {
            Tensor dtanh = mul(dh, s.o);
            auto pt = s.tanh_c.data();
            auto pd = dtanh.data();
            for (std::size_t k = 0; k < pd.size(); ++k) {
                pd[k] *= 1.0 - pt[k] * pt[k];
            }
            add_inplace(dc, dtanh);
        }

        // c = f o c_prev + i o g
        Tensor d_f = mul(dc, s.c_prev);
        Tensor d_i = mul(dc, s.g);
        Tensor d_g = mul(dc, s.i);
        Tensor dc_prev = mul(dc, s.f);

        // through the gate nonlinearities
        auto sig_back = [](Tensor& d, const Tensor& a) {
            auto pd = d.data();
            auto pa = a.data();
            for (std::size_t k = 0; k < pd.size(); ++k) {
                pd[k] *= pa[k] * (1.0 - pa[k]);
            }
        };
        sig_back(d_i, s.i);
        sig_back(d_f, s.f);
        sig_back(d_o, s.o);
        {
            auto pd = d_g.data();
            auto pa = s.g.data();
            for (std::size_t k = 0; k < pd.size(); ++k) {
                pd[k] *= 1.0 - pa[k] * pa[k];
            }
        }

        const Tensor xt_T = transpose(s.x);
        const Tensor h_T = transpose(s.h_prev);
        add_inplace(g_.w_i, matmul(xt_T, d_i));
        add_inplace(g_.w_f, matmul(xt_T, d_f));
        add_inplace(g_.w_o, matmul(xt_T, d_o));
        add_inplace(g_.w_g, matmul(xt_T, d_g));
        add_inplace(g_.u_i, matmul(h_T, d_i));
        add_inplace(g_.u_f, matmul(h_T, d_f));
        add_inplace(g_.u_o, matmul(h_T, d_o));
        add_inplace(g_.u_g, matmul(h_T, d_g));
        add_inplace(g_.b_i, sum_rows(d_i));
        add_inplace(g_.b_f, sum_rows(d_f));
        add_inplace(g_.b_o, sum_rows(d_o));
        add_inplace(g_.b_g, sum_rows(d_g));

        Tensor dh_prev = matmul(d_i, transpose(p_.u_i));
        add_inplace(dh_prev, matmul(d_f, transpose(p_.u_f)));
        add_inplace(dh_prev, matmul(d_o, transpose(p_.u_o)));
        add_inplace(dh_prev, matmul(d_g, transpose(p_.u_g)));

        Tensor dxt = matmul(d_i, transpose(p_.w_i));
        add_inplace(dxt, matmul(d_f, transpose(p_.w_f)));
        add_inplace(dxt, matmul(d_o, transpose(p_.w_o)));
        add_inplace(dxt, matmul(d_g, transpose(p_.w_g)));
        assign_step(dx, ti, dxt);

        dh = std::move(dh_prev);
        dc = std::move(dc_prev);
    }
    return dx;
}

}  // namespace tsuq::nn

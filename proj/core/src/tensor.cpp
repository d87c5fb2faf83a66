#include "tsuq/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tsuq {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), 0.0) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_product(shape_) != data_.size()) {
        throw InvalidArgument("tensor data length " + std::to_string(data_.size()) +
                              " does not match shape " + shape_str());
    }
}

Tensor Tensor::vec(std::initializer_list<double> v) {
    return Tensor({v.size()}, std::vector<double>(v));
}

Tensor Tensor::mat(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<double> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw InvalidArgument("ragged matrix literal");
        data.insert(data.end(), row.begin(), row.end());
    }
    return Tensor({r, c}, std::move(data));
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value) {
    Tensor t(std::move(shape));
    std::fill(t.data_.begin(), t.data_.end(), value);
    return t;
}

Tensor Tensor::reshaped(std::vector<std::size_t> shape) const {
    if (shape_product(shape) != data_.size()) {
        throw InvalidArgument("reshape to incompatible element count");
    }
    return Tensor(std::move(shape), data_);
}

bool Tensor::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

std::string Tensor::shape_str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        if (i) os << ',';
        os << shape_[i];
    }
    os << ')';
    return os.str();
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b)) {
        throw InvalidArgument(std::string(op) + ": shape mismatch " + a.shape_str() +
                              " vs " + b.shape_str());
    }
}

void require_finite(const Tensor& a, const char* ctx) {
    if (!a.all_finite()) {
        throw NumericError(std::string(ctx) + ": non-finite values");
    }
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2) {
        throw InvalidArgument("matmul: both operands must be 2-D, got " +
                              a.shape_str() + " and " + b.shape_str());
    }
    const std::size_t m = a.dim(0), k = a.dim(1), k2 = b.dim(0), n = b.dim(1);
    if (k != k2) {
        throw InvalidArgument("matmul: inner dimensions differ " + a.shape_str() +
                              " vs " + b.shape_str());
    }
    Tensor out({m, n});
    const double* pa = a.data().data();
    const double* pb = b.data().data();
    double* po = out.data().data();
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = pa + i * k;
        double* orow = po + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double av = arow[p];
            if (av == 0.0) continue;
            const double* brow = pb + p * n;
            for (std::size_t j = 0; j < n; ++j) orow[j] += av * brow[j];
        }
    }
    return out;
}

Tensor transpose(const Tensor& a) {
    if (a.rank() != 2) throw InvalidArgument("transpose: 2-D only");
    const std::size_t m = a.dim(0), n = a.dim(1);
    Tensor out({n, m});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(j, i) = a.at(i, j);
    return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    Tensor out = a;
    add_inplace(out, b);
    return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "sub");
    Tensor out = a;
    sub_inplace(out, b);
    return out;
}

Tensor mul(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "mul");
    Tensor out = a;
    mul_inplace(out, b);
    return out;
}

Tensor scale(const Tensor& a, double s) {
    Tensor out = a;
    scale_inplace(out, s);
    return out;
}

void add_inplace(Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    auto pa = a.data();
    auto pb = b.data();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] += pb[i];
}

void sub_inplace(Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "sub");
    auto pa = a.data();
    auto pb = b.data();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] -= pb[i];
}

void mul_inplace(Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "mul");
    auto pa = a.data();
    auto pb = b.data();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
}

void scale_inplace(Tensor& a, double s) {
    for (double& v : a.data()) v *= s;
}

void axpy_inplace(Tensor& a, double s, const Tensor& b) {
    require_same_shape(a, b, "axpy");
    auto pa = a.data();
    auto pb = b.data();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] += s * pb[i];
}

Tensor add_rowwise(const Tensor& m, const Tensor& row) {
    if (m.rank() != 2 || row.rank() != 1 || m.dim(1) != row.dim(0)) {
        throw InvalidArgument("add_rowwise: need (m x n) and (n), got " +
                              m.shape_str() + " and " + row.shape_str());
    }
    Tensor out = m;
    auto po = out.data();
    auto pr = row.data();
    const std::size_t rows = m.dim(0), n = m.dim(1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) po[i * n + j] += pr[j];
    return out;
}

Tensor sum_rows(const Tensor& m) {
    if (m.rank() != 2) throw InvalidArgument("sum_rows: 2-D only");
    const std::size_t rows = m.dim(0), n = m.dim(1);
    Tensor out({n});
    auto po = out.data();
    auto pm = m.data();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) po[j] += pm[i * n + j];
    return out;
}

double sum(const Tensor& a) {
    double s = 0.0;
    for (double v : a.data()) s += v;
    return s;
}

double mean(const Tensor& a) {
    if (a.size() == 0) throw InvalidArgument("mean of empty tensor");
    return sum(a) / static_cast<double>(a.size());
}

double min_value(const Tensor& a) {
    if (a.size() == 0) throw InvalidArgument("min of empty tensor");
    return *std::min_element(a.data().begin(), a.data().end());
}

double max_value(const Tensor& a) {
    if (a.size() == 0) throw InvalidArgument("max of empty tensor");
    return *std::max_element(a.data().begin(), a.data().end());
}

Tensor select_step(const Tensor& x, std::size_t t) {
    if (x.rank() != 3) throw InvalidArgument("select_step: 3-D only");
    const std::size_t n = x.dim(0), steps = x.dim(1), f = x.dim(2);
    if (t >= steps) throw InvalidArgument("select_step: step out of range");
    Tensor out({n, f});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < f; ++j) out.at(i, j) = x.at(i, t, j);
    return out;
}

void assign_step(Tensor& x, std::size_t t, const Tensor& slab) {
    if (x.rank() != 3 || slab.rank() != 2 || slab.dim(0) != x.dim(0) ||
        slab.dim(1) != x.dim(2) || t >= x.dim(1)) {
        throw InvalidArgument("assign_step: incompatible shapes");
    }
    for (std::size_t i = 0; i < slab.dim(0); ++i)
        for (std::size_t j = 0; j < slab.dim(1); ++j) x.at(i, t, j) = slab.at(i, j);
}

Tensor col_range(const Tensor& m, std::size_t c0, std::size_t c1) {
    if (m.rank() != 2 || c0 > c1 || c1 > m.dim(1)) {
        throw InvalidArgument("col_range: bad column range");
    }
    Tensor out({m.dim(0), c1 - c0});
    for (std::size_t i = 0; i < m.dim(0); ++i)
        for (std::size_t j = c0; j < c1; ++j) out.at(i, j - c0) = m.at(i, j);
    return out;
}

void assign_col_range(Tensor& m, std::size_t c0, const Tensor& cols) {
    if (m.rank() != 2 || cols.rank() != 2 || cols.dim(0) != m.dim(0) ||
        c0 + cols.dim(1) > m.dim(1)) {
        throw InvalidArgument("assign_col_range: incompatible shapes");
    }
    for (std::size_t i = 0; i < cols.dim(0); ++i)
        for (std::size_t j = 0; j < cols.dim(1); ++j) m.at(i, c0 + j) = cols.at(i, j);
}

}  // namespace tsuq

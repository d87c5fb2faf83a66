#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tsuq/error.hpp"

namespace tsuq {

// Dense row-major tensor of doubles. Value type: copies are deep,
// immutable-after-construction values can be shared freely across threads.
class Tensor {
public:
    Tensor() = default;

    // Zero-filled tensor of the given shape.
    explicit Tensor(std::vector<std::size_t> shape);

    Tensor(std::vector<std::size_t> shape, std::vector<double> data);

    // 1-D / 2-D literals, mostly for tests.
    static Tensor vec(std::initializer_list<double> v);
    static Tensor mat(std::initializer_list<std::initializer_list<double>> rows);
    static Tensor full(std::vector<std::size_t> shape, double value);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }
    std::size_t dim(std::size_t i) const { return shape_.at(i); }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    double& operator[](std::size_t flat) { return data_[flat]; }
    double operator[](std::size_t flat) const { return data_[flat]; }

    double& at(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
    double& at(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(i * shape_[1] + j) * shape_[2] + k];
    }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * shape_[1] + j) * shape_[2] + k];
    }

    // Same data, new shape; element count must match.
    Tensor reshaped(std::vector<std::size_t> shape) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool all_finite() const;

    std::string shape_str() const;

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

// --- elementwise / linear algebra ---------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b);   // (m x k)·(k x n) -> (m x n)
Tensor transpose(const Tensor& a);                 // 2-D only

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);      // Hadamard
Tensor scale(const Tensor& a, double s);

void add_inplace(Tensor& a, const Tensor& b);
void sub_inplace(Tensor& a, const Tensor& b);
void mul_inplace(Tensor& a, const Tensor& b);
void scale_inplace(Tensor& a, double s);
void axpy_inplace(Tensor& a, double s, const Tensor& b);  // a += s*b

// Adds a length-n row vector to every row of an (m x n) matrix.
Tensor add_rowwise(const Tensor& m, const Tensor& row);
// Column sums of an (m x n) matrix -> length-n vector.
Tensor sum_rows(const Tensor& m);

double sum(const Tensor& a);
double mean(const Tensor& a);
double min_value(const Tensor& a);
double max_value(const Tensor& a);

// x[:, t, :] of a (n x T x f) tensor -> (n x f).
Tensor select_step(const Tensor& x, std::size_t t);
// Writes a (n x f) matrix into x[:, t, :].
void assign_step(Tensor& x, std::size_t t, const Tensor& slab);

// Columns [c0, c1) of an (m x n) matrix.
Tensor col_range(const Tensor& m, std::size_t c0, std::size_t c1);
void assign_col_range(Tensor& m, std::size_t c0, const Tensor& cols);

void require_same_shape(const Tensor& a, const Tensor& b, const char* op);
void require_finite(const Tensor& a, const char* ctx);

}  // namespace tsuq

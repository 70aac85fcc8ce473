// Copyright 2026 The qaml Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Small row-major complex matrices for verification and test oracles.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qaml {

class DenseMatrix {
  public:
    using value_type = std::complex<double>;

    explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    DenseMatrix(std::size_t dim, std::vector<value_type> row_major)
        : dim_(dim), data_(std::move(row_major)) {
        if (data_.size() != dim_ * dim_) {
            throw std::invalid_argument("DenseMatrix: entry count is not dim^2");
        }
    }

    [[nodiscard]] static DenseMatrix identity(std::size_t dim) {
        DenseMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::span<const value_type> data() const noexcept { return data_; }

    value_type &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    value_type operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    [[nodiscard]] DenseMatrix adjoint() const {
        DenseMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    friend DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b) {
        if (a.dim_ != b.dim_) {
            throw std::invalid_argument("DenseMatrix: dimension mismatch");
        }
        DenseMatrix out(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r) {
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const value_type ark = a(r, k);
                if (ark == value_type{}) {
                    continue;
                }
                for (std::size_t c = 0; c < a.dim_; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<value_type> apply(std::span<const value_type> v) const {
        if (v.size() != dim_) {
            throw std::invalid_argument("DenseMatrix: vector length mismatch");
        }
        std::vector<value_type> out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            value_type acc{};
            for (std::size_t c = 0; c < dim_; ++c) {
                acc += (*this)(r, c) * v[c];
            }
            out[r] = acc;
        }
        return out;
    }

  private:
    std::size_t dim_;
    std::vector<value_type> data_;
};

/// Largest entrywise |a - b|.
[[nodiscard]] inline double max_abs_diff(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

[[nodiscard]] inline double max_abs_diff(std::span<const std::complex<double>> a,
                                         std::span<const std::complex<double>> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("max_abs_diff: length mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace qaml

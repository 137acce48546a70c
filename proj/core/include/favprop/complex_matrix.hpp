#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace favprop {

using cplx = std::complex<double>;

// Dense column-major complex matrix, sized once at construction.
class CMatrix {
public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("CMatrix: dimensions must be positive");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[j * rows_ + i];
    }

    std::span<cplx> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
    std::span<const cplx> col(std::size_t j) const noexcept {
        return {data_.data() + j * rows_, rows_};
    }

    std::span<const cplx> data() const noexcept { return data_; }

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// conj(a) . b
inline cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner_product: length mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline double squared_norm(std::span<const cplx> a) {
    double acc = 0.0;
    for (const cplx& z : a) acc += std::norm(z);
    return acc;
}

}  // namespace favprop

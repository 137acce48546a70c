#pragma once

// Test-only reference computations, kept independent of the library code
// paths they are used to check.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "favprop/complex_matrix.hpp"

namespace favprop::testing {

// log2 |A| of a complex matrix with positive real determinant, via LU with
// partial pivoting. Checks capacity-style determinants directly instead of
// going through any eigenvalue machinery.
inline double log2_abs_det(CMatrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("log2_abs_det: square input only");
    const std::size_t n = a.rows();
    double log2_abs = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) == 0.0)
            return -std::numeric_limits<double>::infinity();
        if (pivot != col)
            for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
        log2_abs += std::log2(std::abs(a(col, col)));
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx factor = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
        }
    }
    return log2_abs;
}

// log2 |I + rho G^H G| evaluated by brute force on the K x K matrix.
inline double log2_det_capacity(const CMatrix& g, double rho) {
    const std::size_t k = g.cols();
    CMatrix a(k, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
            cplx acc{0.0, 0.0};
            for (std::size_t m = 0; m < g.rows(); ++m)
                acc += std::conj(g(m, i)) * g(m, j);
            a(i, j) = rho * acc + (i == j ? 1.0 : 0.0);
        }
    return log2_abs_det(a);
}

}  // namespace favprop::testing

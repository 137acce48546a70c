#pragma once

#include <cstddef>
#include <span>

#include "favprop/complex_matrix.hpp"

namespace favprop {

// Fixed summary of a sorted sample pool. Quantiles use the order statistic
// at index ceil(p * n) - 1 (clamped), so q50 of {1, 2, 3} is 2.
struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance; 0 when count < 2
    double q01 = 0.0;
    double q10 = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
    double q99 = 0.0;
};

// Fraction of samples <= x. Pool must be sorted ascending and non-empty;
// right-continuous, nondecreasing, 0 below the minimum and 1 at the maximum.
double empirical_cdf(std::span<const double> sorted_pool, double x);

double quantile(std::span<const double> sorted_pool, double p);

Summary summarize(std::span<const double> sorted_pool);

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);

// mean square deviation from the complex sample mean, with the same (n-1)
// normalization as sample_variance
double complex_sample_variance(std::span<const cplx> zs);

}  // namespace favprop

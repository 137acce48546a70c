#include "favprop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace favprop {

double empirical_cdf(std::span<const double> sorted_pool, double x) {
    if (sorted_pool.empty()) throw std::invalid_argument("empirical_cdf: empty pool");
    const auto it = std::upper_bound(sorted_pool.begin(), sorted_pool.end(), x);
    return static_cast<double>(it - sorted_pool.begin()) /
           static_cast<double>(sorted_pool.size());
}

double quantile(std::span<const double> sorted_pool, double p) {
    if (sorted_pool.empty()) throw std::invalid_argument("quantile: empty pool");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must be in [0, 1]");
    const double pos = std::ceil(p * static_cast<double>(sorted_pool.size())) - 1.0;
    const auto idx = static_cast<std::size_t>(std::max(pos, 0.0));
    return sorted_pool[std::min(idx, sorted_pool.size() - 1)];
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("sample_variance: empty sample");
    if (xs.size() < 2) return 0.0;
    const double mu = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - mu) * (x - mu);
    return acc / static_cast<double>(xs.size() - 1);
}

double complex_sample_variance(std::span<const cplx> zs) {
    if (zs.empty()) throw std::invalid_argument("complex_sample_variance: empty sample");
    if (zs.size() < 2) return 0.0;
    cplx mu{0.0, 0.0};
    for (const cplx& z : zs) mu += z;
    mu /= static_cast<double>(zs.size());
    double acc = 0.0;
    for (const cplx& z : zs) acc += std::norm(z - mu);
    return acc / static_cast<double>(zs.size() - 1);
}

Summary summarize(std::span<const double> sorted_pool) {
    if (sorted_pool.empty()) throw std::invalid_argument("summarize: empty pool");
    Summary s;
    s.count = sorted_pool.size();
    s.mean = mean(sorted_pool);
    s.variance = sample_variance(sorted_pool);
    s.q01 = quantile(sorted_pool, 0.01);
    s.q10 = quantile(sorted_pool, 0.10);
    s.q50 = quantile(sorted_pool, 0.50);
    s.q90 = quantile(sorted_pool, 0.90);
    s.q99 = quantile(sorted_pool, 0.99);
    return s;
}

}  // namespace favprop

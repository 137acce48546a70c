#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "favprop/channel.hpp"
#include "favprop/metrics.hpp"
#include "favprop/stats.hpp"

namespace favprop {

// Which per-trial quantities an ensemble run records.
struct CollectSet {
    bool spectrum = false;
    bool capacity = false;  // records the capacity and both bounds
    bool delta_c = false;
    bool condition_number = false;
    bool inner_products = false;

    bool any() const {
        return spectrum || capacity || delta_c || condition_number || inner_products;
    }
};

struct EnsembleConfig {
    ChannelModelSpec model;
    std::size_t num_antennas = 0;
    std::size_t num_terminals = 0;
    double rho = 1.0;  // default operating point; echoed in every result
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    CollectSet collect;
    unsigned threads = 1;  // execution detail only; never affects the numbers
};

enum class Metric {
    Capacity,
    HadamardBound,
    JensenBound,
    DeltaC,
    ConditionNumber,
    Spectrum,
    InnerProducts,
};

struct TrialError {
    std::size_t trial = 0;
    std::string metric;
    std::string message;
};

// Output of a seeded ensemble run. Per-trial series are stored in trial
// order; trial t always uses the substream derived from (seed, t), so the
// numbers are identical for any worker count or execution order. Metric
// errors (only a zero-capacity trial can produce one) leave a NaN slot in
// the per-trial series, are excluded from pools, and are tallied in
// `errors`; a run where they exceed 0.1% of trials throws instead.
struct EnsembleResult {
    EnsembleConfig config;

    std::vector<double> capacity;          // trials
    std::vector<double> hadamard;          // trials
    std::vector<double> jensen;            // trials
    std::vector<double> delta_c;           // trials, NaN on error
    std::vector<double> condition_number;  // trials
    std::vector<double> spectrum;          // trials * K, ascending within a trial
    std::vector<double> inner_products;    // trials * K(K-1)/2, |g_i^H g_j| / M
    std::vector<TrialError> errors;

    // valid samples of a metric, sorted ascending
    std::vector<double> sorted_pool(Metric metric) const;
    Summary summary(Metric metric) const { return summarize(sorted_pool(metric)); }
};

EnsembleResult run_ensemble(const EnsembleConfig& config);

// One row of a variance convergence study: sample variances of the
// per-antenna inner product (1/M) g_i^H g_j and of (1/M^2) |g_i^H g_j|^2
// over freshly drawn independent pairs, against their closed forms.
struct VarianceRow {
    std::size_t num_antennas = 0;
    double var_ip_sample = 0.0;
    double var_ip_predicted = 0.0;
    double var_ipsq_sample = 0.0;
    double var_ipsq_predicted = 0.0;
    double ratio_ip = 0.0;    // sample / predicted
    double ratio_ipsq = 0.0;  // sample / predicted
};

// Requires model in {Rayleigh, UrLos} and trials >= 10^4 (below that the
// sample variances say nothing about the laws being checked).
std::vector<VarianceRow> variance_study(ChannelModel model,
                                        const std::vector<std::size_t>& antenna_counts,
                                        std::size_t trials, std::uint64_t seed,
                                        unsigned threads = 1);

}  // namespace favprop

#include "favprop/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace favprop {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Run fn(t) for t in [0, count) across `threads` workers. Each index is
// processed exactly once and writes only its own output slots, so the
// partition has no observable effect. The first exception a worker raises
// is rethrown on the caller after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, count));
    if (workers == 1) {
        for (std::size_t t = 0; t < count; ++t) fn(t);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t t = w; t < count; t += workers) fn(t);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

void validate_config(const EnsembleConfig& cfg) {
    validate_spec(cfg.model, cfg.num_antennas, cfg.num_terminals);
    if (cfg.trials == 0) throw std::invalid_argument("run_ensemble: trials must be >= 1");
    if (!cfg.collect.any())
        throw std::invalid_argument("run_ensemble: nothing selected to collect");
    if (!std::isfinite(cfg.rho) || cfg.rho <= 0.0)
        throw std::invalid_argument("run_ensemble: rho must be finite and > 0");
}

std::vector<double> filtered_sorted(const std::vector<double>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs)
        if (!std::isnan(x)) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<double> EnsembleResult::sorted_pool(Metric metric) const {
    switch (metric) {
        case Metric::Capacity: return filtered_sorted(capacity);
        case Metric::HadamardBound: return filtered_sorted(hadamard);
        case Metric::JensenBound: return filtered_sorted(jensen);
        case Metric::DeltaC: return filtered_sorted(delta_c);
        case Metric::ConditionNumber: return filtered_sorted(condition_number);
        case Metric::Spectrum: return filtered_sorted(spectrum);
        case Metric::InnerProducts: return filtered_sorted(inner_products);
    }
    throw std::invalid_argument("sorted_pool: unknown metric");
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
    validate_config(config);

    const std::size_t trials = config.trials;
    const std::size_t k = config.num_terminals;
    const std::size_t pairs = k * (k - 1) / 2;
    const CollectSet& collect = config.collect;
    const bool need_spectrum =
        collect.spectrum || collect.capacity || collect.delta_c || collect.condition_number;

    EnsembleResult result;
    result.config = config;
    if (collect.capacity) {
        result.capacity.assign(trials, kNaN);
        result.hadamard.assign(trials, kNaN);
        result.jensen.assign(trials, kNaN);
    }
    if (collect.delta_c) result.delta_c.assign(trials, kNaN);
    if (collect.condition_number) result.condition_number.assign(trials, kNaN);
    if (collect.spectrum) result.spectrum.assign(trials * k, kNaN);
    if (collect.inner_products && pairs > 0) result.inner_products.assign(trials * pairs, kNaN);

    std::vector<std::uint8_t> zero_capacity(trials, 0);

    parallel_for(trials, config.threads, [&](std::size_t t) {
        Rng rng = Rng::substream(config.seed, t);
        const GeneratedChannel gen =
            generate(config.model, config.num_antennas, config.num_terminals, rng);
        const ChannelMatrix& g = gen.matrix;

        std::vector<double> eigenvalues;
        if (need_spectrum) eigenvalues = gramian_spectrum(g);

        if (collect.spectrum)
            std::copy(eigenvalues.begin(), eigenvalues.end(), result.spectrum.begin() + t * k);

        double cap = 0.0;
        if (collect.capacity || collect.delta_c)
            cap = sum_capacity_from_spectrum(eigenvalues, config.rho);

        double hb = 0.0;
        if (collect.capacity || collect.delta_c) hb = hadamard_bound(g, config.rho);

        if (collect.capacity) {
            const double jb = jensen_bound(g, config.rho);
            if (cap > hb + 1e-9 || hb > jb + 1e-9)
                throw std::logic_error("run_ensemble: capacity bound chain violated");
            result.capacity[t] = cap;
            result.hadamard[t] = hb;
            result.jensen[t] = jb;
        }
        if (collect.delta_c) {
            if (cap > 0.0)
                result.delta_c[t] = (hb - cap) / cap;
            else
                zero_capacity[t] = 1;
        }
        if (collect.condition_number)
            result.condition_number[t] = condition_number_from_spectrum(eigenvalues);
        if (collect.inner_products && pairs > 0) {
            const std::vector<cplx> ips =
                pairwise_inner_products(g, IpNormalization::PerAntenna);
            for (std::size_t p = 0; p < pairs; ++p)
                result.inner_products[t * pairs + p] = std::abs(ips[p]);
        }
    });

    for (std::size_t t = 0; t < trials; ++t)
        if (zero_capacity[t])
            result.errors.push_back(
                {t, "delta_c", "distance from favorable propagation undefined: capacity is 0"});

    if (static_cast<double>(result.errors.size()) > 1e-3 * static_cast<double>(trials))
        throw std::runtime_error("run_ensemble: more than 0.1% of trials failed (" +
                                 std::to_string(result.errors.size()) + " of " +
                                 std::to_string(trials) + ")");
    return result;
}

std::vector<VarianceRow> variance_study(ChannelModel model,
                                        const std::vector<std::size_t>& antenna_counts,
                                        std::size_t trials, std::uint64_t seed,
                                        unsigned threads) {
    if (model != ChannelModel::Rayleigh && model != ChannelModel::UrLos)
        throw std::invalid_argument("variance_study: model must be Rayleigh or UrLos");
    if (trials < 10000)
        throw std::invalid_argument("variance_study: need at least 10^4 pair draws");
    if (antenna_counts.empty())
        throw std::invalid_argument("variance_study: empty antenna count list");

    std::vector<VarianceRow> rows;
    rows.reserve(antenna_counts.size());

    std::vector<cplx> ip(trials);
    std::vector<double> ipsq(trials);

    for (std::size_t mi = 0; mi < antenna_counts.size(); ++mi) {
        const std::size_t m = antenna_counts[mi];
        if (m == 0) throw std::invalid_argument("variance_study: M must be positive");
        const double md = static_cast<double>(m);

        parallel_for(trials, threads, [&, mi, m, md](std::size_t t) {
            Rng rng = Rng::substream(seed, mi * trials + t);
            cplx raw{0.0, 0.0};
            if (model == ChannelModel::Rayleigh) {
                std::vector<cplx> gi(m), gj(m);
                for (cplx& z : gi) z = rng.cn01();
                for (cplx& z : gj) z = rng.cn01();
                raw = inner_product(gi, gj);
            } else {
                const double si = rng.uniform_sym();
                const double sj = rng.uniform_sym();
                const std::vector<cplx> gi = steering_vector_from_sine(si, m, 0.5);
                const std::vector<cplx> gj = steering_vector_from_sine(sj, m, 0.5);
                raw = inner_product(gi, gj);
            }
            ip[t] = raw / md;
            ipsq[t] = std::norm(raw) / (md * md);
        });

        VarianceRow row;
        row.num_antennas = m;
        row.var_ip_sample = complex_sample_variance(ip);
        row.var_ip_predicted = predicted_ip_variance(model, m);
        row.var_ipsq_sample = sample_variance(ipsq);
        row.var_ipsq_predicted = predicted_ip_sq_variance(model, m);
        row.ratio_ip = row.var_ip_sample / row.var_ip_predicted;
        row.ratio_ipsq = row.var_ipsq_predicted != 0.0
                             ? row.var_ipsq_sample / row.var_ipsq_predicted
                             : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace favprop

#include "favprop/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "favprop/rng.hpp"

namespace favprop {

namespace {

BigInt pow10_big(unsigned long n) { return boost::multiprecision::pow(BigInt(10), n); }

std::size_t decimal_digit_count(const BigInt& x) {
    // x > 0
    return x.str().size();
}

void require_urn_args(std::size_t num_beams, std::size_t num_terminals) {
    if (num_terminals < 1 || num_terminals > num_beams)
        throw std::invalid_argument("occupancy: requires 1 <= K <= M");
}

}  // namespace

BeamGrid beam_grid(std::size_t num_beams) {
    if (num_beams == 0) throw std::invalid_argument("beam_grid: M must be positive");
    BeamGrid grid;
    grid.num_beams = num_beams;
    grid.sines.resize(num_beams);
    const double m = static_cast<double>(num_beams);
    for (std::size_t i = 0; i < num_beams; ++i)
        grid.sines[i] = (2.0 * static_cast<double>(i) + 1.0) / m - 1.0;
    return grid;
}

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        c *= static_cast<unsigned long>(n - k + i);
        c /= static_cast<unsigned long>(i);  // exact: C(n-k+i, i) is integral
    }
    return c;
}

DropDistribution drop_pmf(std::size_t num_beams, std::size_t num_terminals) {
    require_urn_args(num_beams, num_terminals);
    const std::size_t m = num_beams;
    const std::size_t k_terms = num_terminals;

    const BigInt denominator = boost::multiprecision::pow(
        BigInt(static_cast<unsigned long>(m)), static_cast<unsigned long>(k_terms));

    DropDistribution dist;
    dist.num_beams = m;
    dist.num_terminals = k_terms;
    dist.pmf.resize(k_terms);

    for (std::size_t n = 0; n < k_terms; ++n) {
        const std::size_t empty = n + m - k_terms;  // beams left without a terminal
        const std::size_t occupied = k_terms - n;
        // sum_{k=0}^{occupied} (-1)^k C(occupied, k) (occupied - k)^K, i.e. the
        // number of ways to hit exactly the chosen `occupied` beams
        BigInt alternating = 0;
        for (std::size_t k = 0; k <= occupied; ++k) {
            const BigInt term =
                binomial(occupied, k) *
                boost::multiprecision::pow(BigInt(static_cast<unsigned long>(occupied - k)),
                                           static_cast<unsigned long>(k_terms));
            if (k % 2 == 0)
                alternating += term;
            else
                alternating -= term;
        }
        dist.pmf[n] = Rational(binomial(m, empty) * alternating, denominator);
    }

    dist.mean = 0;
    for (std::size_t n = 1; n < k_terms; ++n)
        dist.mean += Rational(static_cast<unsigned long>(n)) * dist.pmf[n];
    return dist;
}

Rational mean_drop(std::size_t num_beams, std::size_t num_terminals) {
    return drop_pmf(num_beams, num_terminals).mean;
}

std::vector<double> DropDistribution::pmf_real() const {
    std::vector<double> out(pmf.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) out[i] = pmf[i].convert_to<double>();
    return out;
}

double DropDistribution::mean_real() const { return mean.convert_to<double>(); }

std::vector<double> simulate_drop(std::size_t num_beams, std::size_t num_terminals,
                                  std::size_t trials, std::uint64_t seed, unsigned threads) {
    require_urn_args(num_beams, num_terminals);
    if (trials == 0) throw std::invalid_argument("simulate_drop: trials must be >= 1");

    const unsigned workers = static_cast<unsigned>(
        std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, trials));

    std::vector<std::vector<std::uint64_t>> tallies(
        workers, std::vector<std::uint64_t>(num_terminals, 0));

    auto run_worker = [&](unsigned w) {
        std::vector<std::uint64_t>& local = tallies[w];
        std::vector<std::uint64_t> stamp(num_beams, std::numeric_limits<std::uint64_t>::max());
        for (std::size_t t = w; t < trials; t += workers) {
            Rng rng = Rng::substream(seed, t);
            std::size_t distinct = 0;
            for (std::size_t ball = 0; ball < num_terminals; ++ball) {
                const std::uint64_t urn = rng.below(num_beams);
                if (stamp[urn] != t) {
                    stamp[urn] = t;
                    ++distinct;
                }
            }
            ++local[num_terminals - distinct];
        }
    };

    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
        for (std::thread& th : pool) th.join();
    }

    std::vector<double> freq(num_terminals, 0.0);
    for (std::size_t n = 0; n < num_terminals; ++n) {
        std::uint64_t total = 0;
        for (unsigned w = 0; w < workers; ++w) total += tallies[w][n];
        freq[n] = static_cast<double>(total) / static_cast<double>(trials);
    }
    return freq;
}

std::vector<std::size_t> assign_and_drop(std::span<const double> terminal_sines,
                                         std::size_t num_beams) {
    if (num_beams == 0) throw std::invalid_argument("assign_and_drop: M must be positive");
    for (double s : terminal_sines)
        if (!std::isfinite(s) || s < -1.0 || s > 1.0)
            throw std::invalid_argument("assign_and_drop: sines must lie in [-1, 1]");

    const double m = static_cast<double>(num_beams);
    auto beam_center = [m](std::size_t i) {
        return (2.0 * static_cast<double>(i) + 1.0) / m - 1.0;
    };

    constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first_in_beam(num_beams, kFree);
    std::vector<std::size_t> dropped;

    for (std::size_t k = 0; k < terminal_sines.size(); ++k) {
        const double s = terminal_sines[k];
        const double ideal = (s + 1.0) * 0.5 * m - 0.5;
        std::size_t beam = 0;
        if (ideal > 0.0)
            beam = std::min(static_cast<std::size_t>(ideal), num_beams - 1);
        // the nearest beam is `beam` or its right neighbor; ties keep the lower index
        if (beam + 1 < num_beams &&
            std::abs(s - beam_center(beam + 1)) < std::abs(s - beam_center(beam)))
            ++beam;
        if (first_in_beam[beam] == kFree)
            first_in_beam[beam] = k;
        else
            dropped.push_back(k);  // ascending because k is
    }
    return dropped;
}

std::string decimal_string(const Rational& value, unsigned significant_digits) {
    if (significant_digits == 0)
        throw std::invalid_argument("decimal_string: need at least one digit");
    if (value == 0) return "0";

    BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    const bool negative = num < 0;
    if (negative) num = -num;

    // exponent: largest ex with 10^ex <= num/den
    auto compare_pow10 = [&](long p) {
        if (p >= 0) {
            const BigInt rhs = den * pow10_big(static_cast<unsigned long>(p));
            return num.compare(rhs);
        }
        const BigInt lhs = num * pow10_big(static_cast<unsigned long>(-p));
        return lhs.compare(den);
    };
    long ex = static_cast<long>(decimal_digit_count(num)) -
              static_cast<long>(decimal_digit_count(den));
    while (compare_pow10(ex) < 0) --ex;
    while (compare_pow10(ex + 1) >= 0) ++ex;

    // round num/den * 10^(digits-1-ex) half away from zero
    const long shift = static_cast<long>(significant_digits) - 1 - ex;
    BigInt scaled_num = num;
    BigInt scaled_den = den;
    if (shift >= 0)
        scaled_num *= pow10_big(static_cast<unsigned long>(shift));
    else
        scaled_den *= pow10_big(static_cast<unsigned long>(-shift));
    BigInt rounded = (2 * scaled_num + scaled_den) / (2 * scaled_den);
    if (rounded == pow10_big(significant_digits)) {
        rounded = pow10_big(significant_digits - 1);
        ++ex;
    }

    std::string digits = rounded.str();
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out;
    if (ex >= -4 && ex < static_cast<long>(significant_digits)) {
        if (ex >= 0) {
            const std::size_t int_len = static_cast<std::size_t>(ex) + 1;
            if (digits.size() <= int_len) {
                out = digits + std::string(int_len - digits.size(), '0');
            } else {
                out = digits.substr(0, int_len) + "." + digits.substr(int_len);
            }
        } else {
            out = "0." + std::string(static_cast<std::size_t>(-ex) - 1, '0') + digits;
        }
    } else {
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += 'e';
        out += ex >= 0 ? '+' : '-';
        std::string exp_digits = std::to_string(ex >= 0 ? ex : -ex);
        if (exp_digits.size() < 2) exp_digits.insert(0, "0");
        out += exp_digits;
    }
    return negative ? "-" + out : out;
}

}  // namespace favprop

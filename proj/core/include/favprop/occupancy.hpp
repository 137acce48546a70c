#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace favprop {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Orthogonal beam directions of an M-antenna array at spacing d/lambda = 1/2:
// sin(theta_m) = -1 + (2m - 1)/M for m = 1..M. The corresponding steering
// vectors form a DFT family and are exactly pairwise orthogonal.
struct BeamGrid {
    std::size_t num_beams = 0;
    std::vector<double> sines;  // strictly increasing, inside (-1, 1), gaps 2/M
};

BeamGrid beam_grid(std::size_t num_beams);

// Exact distribution of the number of terminals dropped when K terminals are
// assigned independently and uniformly to M beams and each beam keeps at
// most one. With N0 empty beams, the drop count is N0 - (M - K), supported
// on 0 .. K-1.
struct DropDistribution {
    std::size_t num_beams = 0;      // M
    std::size_t num_terminals = 0;  // K
    std::vector<Rational> pmf;      // index n = 0..K-1; sums to exactly 1
    Rational mean;                  // sum of n * pmf[n]

    std::vector<double> pmf_real() const;
    double mean_real() const;
};

// pmf[n] = C(M, n+M-K) * sum_{k=0}^{K-n} (-1)^k C(K-n, k) (1 - (n+M-K+k)/M)^K.
// The alternating sum explodes in floating point (binomials up to C(M, M-K)
// against near-cancelling powers), so everything is carried in exact
// arbitrary-precision rationals and converted to double only for reporting.
// Requires 1 <= K <= M.
DropDistribution drop_pmf(std::size_t num_beams, std::size_t num_terminals);

// sum of n * pmf[n]; equals M (1 - 1/M)^K - (M - K) exactly.
Rational mean_drop(std::size_t num_beams, std::size_t num_terminals);

// Monte Carlo oracle for drop_pmf: `trials` rounds of K balls thrown into M
// urns; returns the frequency of each drop count. Deterministic for a fixed
// seed. Trials are spread over `threads` workers, each trial on its own
// derived substream, and integer tallies are merged by summation, so the
// worker count never changes the result.
std::vector<double> simulate_drop(std::size_t num_beams, std::size_t num_terminals,
                                  std::size_t trials, std::uint64_t seed,
                                  unsigned threads = 1);

// Assign each terminal (given as sin(angle) in [-1, 1]) to the nearest beam
// of the M-beam grid (ties to the lower-index beam); in every beam all but
// the lowest-indexed terminal are dropped. Returns dropped terminal indices
// in ascending order.
std::vector<std::size_t> assign_and_drop(std::span<const double> terminal_sines,
                                         std::size_t num_beams);

// Exact binomial coefficient.
BigInt binomial(std::size_t n, std::size_t k);

// Decimal expansion of a rational with the given number of significant
// digits (round half away from zero, trailing zeros stripped); falls back to
// scientific notation outside the %g-style fixed range.
std::string decimal_string(const Rational& value, unsigned significant_digits);

}  // namespace favprop
